#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "oransim/e2/message.hpp"

namespace oransim::e2 {

/// Wire format (docs/formats.md): header = magic 0x45 0x32, version 0x01,
/// type tag (1 byte), payload length (u32 big-endian), then the payload.
/// All integers big-endian; doubles as IEEE-754 bit patterns; strings and
/// lists length-prefixed with a u16.
inline constexpr std::uint8_t kMagic0 = 0x45;
inline constexpr std::uint8_t kMagic1 = 0x32;
inline constexpr std::uint8_t kVersion = 0x01;
inline constexpr std::size_t kHeaderSize = 8;

enum class CodecErrorCode {
  bad_magic,
  unknown_version,
  unknown_type,
  truncated,
  length_mismatch,
  field_overflow,  // string or list too long to encode
};

class CodecError : public std::runtime_error {
 public:
  CodecError(CodecErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  CodecErrorCode code() const { return code_; }

 private:
  CodecErrorCode code_;
};

std::vector<std::uint8_t> encode(const E2Message& msg);

/// Decodes exactly one frame; trailing bytes are a length mismatch.
E2Message decode(std::span<const std::uint8_t> bytes);

/// Reassembles frames from an arbitrarily chunked byte stream, so the codec
/// can ride any reliable, ordered transport.
class FrameBuffer {
 public:
  void append(std::span<const std::uint8_t> chunk);

  /// Returns the next complete frame, or nullopt if more bytes are needed.
  /// Throws CodecError{bad_magic} as soon as the buffered header is invalid.
  std::optional<std::vector<std::uint8_t>> next_frame();

  std::size_t buffered() const { return buf_.size(); }

 private:
  std::vector<std::uint8_t> buf_;
};

}  // namespace oransim::e2
