#include "carlitz/report.hpp"

#include <ostream>
#include <stdexcept>

namespace carlitz {

namespace {
constexpr const char* kSchema = "kummer-report/1";

bool valid_status(const std::string& s) {
  return s == "pass" || s == "fail" || s == "skip" || s == "exploratory";
}
}  // namespace

void Report::add(const std::string& id, const std::string& claim,
                 const std::string& instance, bool pass, const std::string& witness) {
  add(ClauseRecord{id, claim, instance, pass ? "pass" : "fail", witness, -1.0});
}

bool Report::ok() const {
  for (const auto& c : clauses)
    if (c.status == "fail") return false;
  return true;
}

std::size_t Report::count(const std::string& status) const {
  std::size_t n = 0;
  for (const auto& c : clauses)
    if (c.status == status) ++n;
  return n;
}

nlohmann::ordered_json Report::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = kSchema;
  j["title"] = title;
  j["ok"] = ok();
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& c : clauses) {
    if (!valid_status(c.status))
      throw std::logic_error("invalid clause status: " + c.status);
    nlohmann::ordered_json rec;
    rec["id"] = c.id;
    rec["claim"] = c.claim;
    rec["instance"] = c.instance;
    rec["status"] = c.status;
    rec["witness"] = c.witness;
    if (c.seconds >= 0.0) rec["seconds"] = c.seconds;
    arr.push_back(std::move(rec));
  }
  j["clauses"] = std::move(arr);
  return j;
}

Report Report::from_json(const nlohmann::json& j) {
  if (j.at("schema").get<std::string>() != kSchema)
    throw std::invalid_argument("unrecognized report schema");
  Report r;
  r.title = j.at("title").get<std::string>();
  for (const auto& rec : j.at("clauses")) {
    ClauseRecord c;
    c.id = rec.at("id").get<std::string>();
    c.claim = rec.at("claim").get<std::string>();
    c.instance = rec.at("instance").get<std::string>();
    c.status = rec.at("status").get<std::string>();
    if (!valid_status(c.status))
      throw std::invalid_argument("invalid clause status: " + c.status);
    c.witness = rec.at("witness").get<std::string>();
    if (rec.contains("seconds")) c.seconds = rec.at("seconds").get<double>();
    r.clauses.push_back(std::move(c));
  }
  return r;
}

void Report::print_text(std::ostream& os) const {
  os << "== " << title << " ==\n";
  for (const auto& c : clauses) {
    os << "[" << c.status << "] " << c.id << ": " << c.claim;
    if (!c.instance.empty()) os << "  (" << c.instance << ")";
    os << "\n";
    if (!c.witness.empty()) os << "    " << c.witness << "\n";
    if (c.seconds >= 0.0) os << "    time: " << c.seconds << "s\n";
  }
  os << (ok() ? "OK" : "FAILED") << ": " << clauses.size() << " clauses, "
     << count("pass") << " pass, " << count("fail") << " fail, "
     << count("skip") << " skip, " << count("exploratory") << " exploratory\n";
}

}  // namespace carlitz
