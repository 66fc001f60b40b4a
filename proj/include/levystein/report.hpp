#pragma once

#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace levystein {

/// Term-by-term record of a computed bound. total() is always the sum of the terms.
struct BoundReport {
  std::string name;
  std::vector<std::pair<std::string, double>> terms;
  nlohmann::json params = nlohmann::json::object();
  std::vector<std::string> notes;
  std::map<std::string, double> derived;  // quantities computed from the total (rates, transfers)

  BoundReport& add(std::string term, double value) {
    terms.emplace_back(std::move(term), value);
    return *this;
  }
  double term(const std::string& key) const;
  double total() const;
  nlohmann::json to_json() const;
};

/// Shortest round-trip decimal with 17 significant digits.
std::string fmt17(double v);

/// Minimal CSV writer with fixed numeric formatting.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}
  CsvWriter(std::ostream& os, const std::vector<std::string>& cols) : os_(os) { header(cols); }
  void header(const std::vector<std::string>& cols);
  void row(const std::vector<double>& vals);
  void row(const std::string& first, const std::vector<double>& vals);

 private:
  std::ostream& os_;
};

/// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string& s);

}  // namespace levystein
