#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace hg {

enum class Status { pass, fail, skipped };

const char* status_name(Status s);

struct CheckRecord {
  std::string name;
  Status status = Status::pass;
  std::string witness;
  nlohmann::json data;
};

/// Named pass/fail/skip records.  Order of insertion is kept; serializers sort.
class Report {
 public:
  void add(std::string name, bool ok, std::string witness = {}, nlohmann::json data = {});
  void skip(std::string name, std::string reason);
  void merge(const Report& other, const std::string& prefix = {});

  bool ok() const;
  bool passed(const std::string& name) const;
  const CheckRecord* find(const std::string& name) const;
  const std::vector<CheckRecord>& records() const { return records_; }
  std::vector<std::string> failures() const;

  /// {"name": {"status": ..., "witness": ...}} sorted by name.
  nlohmann::json to_json() const;

 private:
  std::vector<CheckRecord> records_;
};

}  // namespace hg
