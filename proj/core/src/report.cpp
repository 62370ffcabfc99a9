#include "mforge/report.hpp"

#include <cctype>

#include "mforge/version.hpp"

namespace mforge {

const char* status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Inconclusive: return "inconclusive";
    case Status::Conditional: return "conditional";
    case Status::Fail: return "fail";
    case Status::Refused: return "refused";
  }
  return "?";
}

int status_exit_code(Status s) {
  switch (s) {
    case Status::Pass: return 0;
    case Status::Fail: return 1;
    case Status::Inconclusive:
    case Status::Conditional: return 2;
    case Status::Refused: return 3;
  }
  return 3;
}

Status worse_status(Status a, Status b) { return a < b ? b : a; }

Status CheckReport::overall() const {
  Status s = Status::Pass;
  for (const auto& item : items) s = worse_status(s, item.status);
  return s;
}

nlohmann::ordered_json CheckReport::to_json() const {
  nlohmann::ordered_json j;
  j["report_version"] = kReportVersion;
  j["tool_version"] = kToolVersion;
  j["command"] = command;
  j["subject"] = subject;
  if (seed) j["seed"] = *seed;
  j["overall"] = status_name(overall());
  j["exit_code"] = exit_code();
  auto checks = nlohmann::ordered_json::array();
  for (const auto& item : items) {
    nlohmann::ordered_json c;
    c["name"] = item.name;
    c["status"] = status_name(item.status);
    if (item.count) c["count"] = item.count;
    if (item.witness) {
      c["witness"]["inputs"] = item.witness->inputs;
      c["witness"]["value"] = item.witness->value;
    }
    if (!item.details.empty()) c["details"] = item.details;
    if (!item.data.is_null()) c["data"] = item.data;
    checks.push_back(std::move(c));
  }
  j["checks"] = std::move(checks);
  return j;
}

std::string CheckReport::to_human() const {
  std::string out;
  out += "subject: " + subject + "\n";
  out += "command: " + command + "\n";
  if (seed) out += "seed: " + std::to_string(*seed) + "\n";
  for (const auto& item : items) {
    std::string line = "[";
    std::string tag = status_name(item.status);
    for (auto& ch : tag) ch = static_cast<char>(toupper(static_cast<unsigned char>(ch)));
    line += tag;
    line += "] " + item.name;
    if (item.count) line += " (" + std::to_string(item.count) + " tuples)";
    out += line + "\n";
    if (item.witness) {
      out += "    witness:";
      for (const auto& in : item.witness->inputs) out += " " + in + " ;";
      out += " value: " + item.witness->value + "\n";
    }
    if (!item.details.empty()) out += "    " + item.details + "\n";
    if (!item.data.is_null()) out += "    data: " + item.data.dump() + "\n";
  }
  out += "overall: ";
  out += status_name(overall());
  out += " (exit " + std::to_string(exit_code()) + ")\n";
  out += "elapsed: " + std::to_string(elapsed_ms) + " ms\n";
  return out;
}

CheckItem pass_item(std::string name, uint64_t count, std::string details) {
  CheckItem item;
  item.name = std::move(name);
  item.count = count;
  item.details = std::move(details);
  return item;
}

CheckItem fail_item(std::string name, Witness w, uint64_t count, std::string details) {
  CheckItem item;
  item.name = std::move(name);
  item.status = Status::Fail;
  item.witness = std::move(w);
  item.count = count;
  item.details = std::move(details);
  return item;
}

}  // namespace mforge
