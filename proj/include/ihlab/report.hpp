#pragma once

#include <string>
#include <vector>

namespace ihlab {

enum class Status { kPass, kFail, kWarn, kInfo, kSkipped };

std::string to_string(Status s);

struct CheckResult {
  std::string name;
  Status status = Status::kPass;
  std::vector<std::string> witnesses;
};

/// An ordered list of named checks.  A report is ok when nothing failed;
/// warnings and informational entries do not count against it.
struct CheckReport {
  std::vector<CheckResult> checks;

  void pass(std::string name, std::vector<std::string> witnesses = {}) {
    checks.push_back({std::move(name), Status::kPass, std::move(witnesses)});
  }
  void fail(std::string name, std::vector<std::string> witnesses) {
    checks.push_back({std::move(name), Status::kFail, std::move(witnesses)});
  }
  void record(std::string name, bool ok, std::vector<std::string> witnesses = {}) {
    checks.push_back({std::move(name), ok ? Status::kPass : Status::kFail, std::move(witnesses)});
  }
  void add(CheckResult r) { checks.push_back(std::move(r)); }
  void append(const CheckReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  }

  bool ok() const {
    for (const auto& c : checks)
      if (c.status == Status::kFail) return false;
    return true;
  }
  std::vector<std::string> failures() const {
    std::vector<std::string> out;
    for (const auto& c : checks)
      if (c.status == Status::kFail) out.push_back(c.name);
    return out;
  }
  const CheckResult* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

}  // namespace ihlab
