#include "levystein/report.hpp"

#include <cmath>
#include <cstdio>

#include "levystein/error.hpp"

namespace levystein {

double BoundReport::term(const std::string& key) const {
  for (const auto& [k, v] : terms)
    if (k == key) return v;
  throw Error(ErrorKind::Unavailable, name + ": no term '" + key + "'");
}

double BoundReport::total() const {
  double s = 0.0;
  for (const auto& t : terms) s += t.second;
  return s;
}

nlohmann::json BoundReport::to_json() const {
  nlohmann::json j;
  j["name"] = name;
  nlohmann::json t = nlohmann::json::array();
  for (const auto& [k, v] : terms) t.push_back({{"term", k}, {"value", v}});
  j["terms"] = t;
  j["total"] = total();
  j["params"] = params;
  j["derived"] = derived;
  j["notes"] = notes;
  return j;
}

std::string fmt17(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void CsvWriter::header(const std::vector<std::string>& cols) {
  for (std::size_t i = 0; i < cols.size(); ++i) os_ << (i ? "," : "") << cols[i];
  os_ << '\n';
}

void CsvWriter::row(const std::vector<double>& vals) {
  for (std::size_t i = 0; i < vals.size(); ++i) os_ << (i ? "," : "") << fmt17(vals[i]);
  os_ << '\n';
}

void CsvWriter::row(const std::string& first, const std::vector<double>& vals) {
  os_ << first;
  for (double v : vals) os_ << ',' << fmt17(v);
  os_ << '\n';
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace levystein
