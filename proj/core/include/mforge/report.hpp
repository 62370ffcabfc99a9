#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace mforge {

enum class Status { Pass, Inconclusive, Conditional, Fail, Refused };

const char* status_name(Status s);
// pass 0, fail 1, inconclusive/conditional 2, refused 3
int status_exit_code(Status s);
Status worse_status(Status a, Status b);

// Concrete evidence for a verdict: the inputs by name/expression plus the
// value that exhibits the claim (residual, kernel vector, both sides, ...).
struct Witness {
  std::vector<std::string> inputs;
  std::string value;
};

struct CheckItem {
  std::string name;
  Status status = Status::Pass;
  std::optional<Witness> witness;
  std::string details;
  uint64_t count = 0;  // size of the check's domain; 0 when not applicable
  nlohmann::ordered_json data;  // structured extras (value sets, ranks, ...)
};

struct CheckReport {
  std::string command;  // normalized echo: no --threads/--format, no timing
  std::string subject;
  std::optional<uint64_t> seed;  // echoed whenever sampling was involved
  std::vector<CheckItem> items;
  int64_t elapsed_ms = 0;  // shown in human output only, never in JSON

  Status overall() const;
  int exit_code() const { return status_exit_code(overall()); }
  nlohmann::ordered_json to_json() const;
  std::string to_human() const;
};

// helpers used by every check implementation
CheckItem pass_item(std::string name, uint64_t count = 0, std::string details = "");
CheckItem fail_item(std::string name, Witness w, uint64_t count = 0, std::string details = "");

}  // namespace mforge
