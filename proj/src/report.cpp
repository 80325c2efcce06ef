#include "hopfgauge/report.hpp"

#include <algorithm>

namespace hg {

const char* status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
  }
  return "fail";
}

void Report::add(std::string name, bool ok, std::string witness, nlohmann::json data) {
  // a witness only means something for a failure
  if (ok) witness.clear();
  records_.push_back({std::move(name), ok ? Status::pass : Status::fail, std::move(witness), std::move(data)});
}

void Report::skip(std::string name, std::string reason) {
  records_.push_back({std::move(name), Status::skipped, std::move(reason), {}});
}

void Report::merge(const Report& other, const std::string& prefix) {
  for (const auto& r : other.records_) {
    CheckRecord c = r;
    if (!prefix.empty()) c.name = prefix + "." + c.name;
    records_.push_back(std::move(c));
  }
}

bool Report::ok() const {
  return std::none_of(records_.begin(), records_.end(),
                      [](const CheckRecord& r) { return r.status == Status::fail; });
}

bool Report::passed(const std::string& name) const {
  const CheckRecord* r = find(name);
  return r && r->status == Status::pass;
}

const CheckRecord* Report::find(const std::string& name) const {
  for (const auto& r : records_)
    if (r.name == name) return &r;
  return nullptr;
}

std::vector<std::string> Report::failures() const {
  std::vector<std::string> out;
  for (const auto& r : records_)
    if (r.status == Status::fail) out.push_back(r.name + (r.witness.empty() ? "" : ": " + r.witness));
  return out;
}

nlohmann::json Report::to_json() const {
  // nlohmann::json objects are std::map backed, so keys come out sorted
  nlohmann::json out = nlohmann::json::object();
  for (const auto& r : records_) {
    nlohmann::json rec;
    rec["status"] = status_name(r.status);
    if (!r.witness.empty()) rec["witness"] = r.witness;
    if (!r.data.is_null()) rec["data"] = r.data;
    out[r.name] = rec;
  }
  return out;
}

}  // namespace hg
