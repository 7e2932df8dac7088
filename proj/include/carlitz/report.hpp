#pragma once

#include <chrono>
#include <iosfwd>
#include <string>
#include <vector>

#include "carlitz/errors.hpp"
#include "json.hpp"

namespace carlitz {

// One verified (or failed, skipped, exploratory) clause of a verification
// run. `claim` states the mathematical assertion in words, or "plumbing"
// for bookkeeping records; `witness` carries the computed data backing the
// status. `seconds` is negative when timing capture is off so that reports
// stay byte-identical across runs.
struct ClauseRecord {
  std::string id;
  std::string claim;
  std::string instance;
  std::string status;  // pass | fail | skip | exploratory
  std::string witness;
  double seconds = -1.0;
};

struct Report {
  std::string title;
  std::vector<ClauseRecord> clauses;

  void add(ClauseRecord r) { clauses.push_back(std::move(r)); }
  void add(const std::string& id, const std::string& claim, const std::string& instance,
           bool pass, const std::string& witness);

  // True when no clause failed; skips and exploratory records do not count
  // against it.
  bool ok() const;
  std::size_t count(const std::string& status) const;

  nlohmann::ordered_json to_json() const;
  static Report from_json(const nlohmann::json& j);

  void print_text(std::ostream& os) const;
};

// Runs one clause body against a report: the body sets the record's status
// and witness; a cap overrun becomes a skip, any other exception a failure
// carrying the message. Timings are attached only when requested so default
// reports stay byte-identical across runs.
struct ClauseRunner {
  Report& rep;
  std::string instance;
  bool timings = false;

  template <class Fn>
  void run(const std::string& id, const std::string& claim, Fn&& fn) {
    ClauseRecord rec{id, claim, instance, "fail", "", -1.0};
    auto t0 = std::chrono::steady_clock::now();
    try {
      fn(rec);
    } catch (const CapExceeded& e) {
      rec.status = "skip";
      rec.witness = std::string("cap: ") + e.what();
    } catch (const std::exception& e) {
      rec.status = "fail";
      rec.witness = std::string("error: ") + e.what();
    }
    if (timings) {
      auto t1 = std::chrono::steady_clock::now();
      rec.seconds = std::chrono::duration<double>(t1 - t0).count();
    }
    rep.add(std::move(rec));
  }
};

}  // namespace carlitz
