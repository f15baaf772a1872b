#pragma once

#include <compare>
#include <cstdint>

namespace oransim::sim {

/// Simulation time in integer milliseconds since run start.
struct SimTime {
  std::int64_t ms = 0;

  constexpr auto operator<=>(const SimTime&) const = default;

  constexpr SimTime operator+(SimTime rhs) const { return {ms + rhs.ms}; }
  constexpr SimTime operator-(SimTime rhs) const { return {ms - rhs.ms}; }
  constexpr SimTime& operator+=(SimTime rhs) {
    ms += rhs.ms;
    return *this;
  }

  constexpr double seconds() const { return static_cast<double>(ms) / 1000.0; }
};

constexpr SimTime millis(std::int64_t ms) { return {ms}; }
constexpr SimTime seconds(std::int64_t s) { return {s * 1000}; }

}  // namespace oransim::sim
