#pragma once

// Line-delimited JSON records with a versioned header line, and JSON forms of the
// solver and regulator results.

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tempered/solver.hpp"

namespace tempered {

inline constexpr int kRecordsVersion = 1;
inline constexpr const char* kRecordsFormat = "tempered-records";

/// Writes the header on construction and one compact JSON object per line afterwards.
class RecordWriter {
 public:
  RecordWriter(std::ostream& out, const std::string& kind, nlohmann::json meta = nlohmann::json::object());
  void write(const nlohmann::json& record);
  std::size_t count() const { return count_; }

 private:
  std::ostream& out_;
  std::size_t count_ = 0;
};

struct RecordStream {
  nlohmann::json header;
  std::vector<nlohmann::json> records;
  std::string kind() const { return header.value("kind", ""); }
};

/// Throws ParseError on a missing or foreign header, a newer version or a malformed line.
RecordStream read_records(std::istream& in);
RecordStream read_records_file(const std::string& path);

nlohmann::json to_json(std::complex<double> z);
std::complex<double> complex_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ParamVector& a);
ParamVector param_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ScanBox& box);
ScanBox box_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ScanNode& node);
nlohmann::json to_json(const ExactPoint& point);
nlohmann::json to_json(const EnumerationReport& report);
nlohmann::json to_json(const PeriodMatrix& pm);
nlohmann::json to_json(const RegulatorVector& r);

}  // namespace tempered
