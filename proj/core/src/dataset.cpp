#include "oransim/nn/dataset.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "oransim/errors.hpp"

namespace oransim::nn {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& s, const std::string& path, int line) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0' || errno == ERANGE) {
    throw DataError(path + ":" + std::to_string(line) +
                    ": bad numeric field '" + s + "'");
  }
  return v;
}

long long parse_int(const std::string& s, const std::string& path, int line) {
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (end == s.c_str() || *end != '\0' || errno == ERANGE) {
    throw DataError(path + ":" + std::to_string(line) +
                    ": bad integer field '" + s + "'");
  }
  return v;
}

}  // namespace

std::vector<RsrpSeries> load_rsrp_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw DataError("cannot open dataset: " + path);

  std::string line;
  if (!std::getline(is, line)) throw DataError("empty dataset: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  auto header = split_csv(line);
  if (header.size() < 4 || header[0] != "t_ms" || header[1] != "ue_id" ||
      header[2] != "cell_id" || header[3] != "rsrp_dbm") {
    throw DataError(path + ": header must start with t_ms,ue_id,cell_id,rsrp_dbm");
  }

  std::map<std::pair<radio::UeId, radio::CellId>,
           std::vector<std::pair<sim::SimTime, double>>>
      grouped;
  int line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() < 4) {
      throw DataError(path + ":" + std::to_string(line_no) +
                      ": expected at least 4 columns");
    }
    const long long t = parse_int(fields[0], path, line_no);
    const long long ue = parse_int(fields[1], path, line_no);
    const long long cell = parse_int(fields[2], path, line_no);
    const double rsrp = parse_double(fields[3], path, line_no);
    if (ue < 0 || cell < 0) {
      throw DataError(path + ":" + std::to_string(line_no) + ": negative id");
    }
    grouped[{static_cast<radio::UeId>(ue), static_cast<radio::CellId>(cell)}]
        .emplace_back(sim::SimTime{t}, rsrp);
  }

  std::vector<RsrpSeries> out;
  out.reserve(grouped.size());
  for (auto& [key, samples] : grouped) {
    std::stable_sort(samples.begin(), samples.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    RsrpSeries s;
    s.ue = key.first;
    s.cell = key.second;
    s.samples = std::move(samples);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<std::vector<double>> series_values(
    const std::vector<RsrpSeries>& series) {
  std::vector<std::vector<double>> out;
  out.reserve(series.size());
  for (const RsrpSeries& s : series) {
    std::vector<double> values;
    values.reserve(s.samples.size());
    for (const auto& [t, v] : s.samples) values.push_back(v);
    out.push_back(std::move(values));
  }
  return out;
}

}  // namespace oransim::nn
