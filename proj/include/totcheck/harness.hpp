#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "totcheck/theorems.hpp"

namespace totcheck::harness {

struct SweepConfig {
  std::vector<CongruenceCase> cases;  // deduplicated, canonical order enforced
  unsigned long n_min = 1;
  unsigned long n_max = 1;
  unsigned long value_max = 2;  // first < second <= value_max, lower bound 1
  theorems::Mode mode = theorems::Mode::Existence;
  std::uint64_t budget = arith::kDefaultRhoBudget;
  unsigned parallelism = 1;
  std::optional<std::filesystem::path> cache_path;
};

// Thread-safe persistent factorization cache. One JSON object per line:
//   {"v":"2047","f":[["23",1],["89",1]],"c":true}
// Entries are re-validated on load and corrupt lines dropped. Lookups are
// single-flight: concurrent requests for one value compute it once, which
// keeps hit/miss counts independent of scheduling. An incomplete entry is
// retried on its cofactor once per run and replaced if the retry improves it.
class FactorCache {
 public:
  explicit FactorCache(std::optional<std::filesystem::path> path);

  std::optional<arith::Factorization> get(const Natural& value);
  void put(const arith::Factorization& f);
  arith::Factorization get_or_compute(const Natural& value, std::uint64_t budget);

  std::uint64_t hits() const { return hits_.load(); }
  std::uint64_t misses() const { return misses_.load(); }

 private:
  struct Slot {
    std::shared_future<arith::Factorization> result;
    std::uint64_t attempted_budget = 0;  // highest split budget tried this run
  };

  void load();
  void append_locked(const arith::Factorization& f);

  std::mutex mu_;
  std::map<Natural, Slot> entries_;
  std::atomic<std::uint64_t> hits_{0};
  std::atomic<std::uint64_t> misses_{0};
  std::optional<std::filesystem::path> path_;
  std::ofstream out_;
  bool persist_ = false;
};

struct Report {
  SweepConfig config;
  std::vector<theorems::VerificationRecord> records;  // canonical grid order
  std::map<theorems::Status, std::size_t> counts;
  double total_runtime_ms = 0.0;
  std::uint64_t cache_hits = 0;
  std::uint64_t cache_misses = 0;
};

// Enumerates (case, n, first, second) ascending, skipping even-n SumQuotient
// instances, and verifies each one in the configured mode on a worker pool.
// Records land in canonical grid order regardless of completion order.
Report run_sweep(const SweepConfig& config);

enum class ReportFormat { Json, Csv };

inline constexpr const char* kCsvHeader =
    "case,n,first,second,target,mode,status,witness,phi_residue,elapsed_ms";

// Csv: one row per record under kCsvHeader, big integers in decimal, absent
// fields empty. Json: config echo, per-status counts, every non-Verified
// record, total runtime and cache counters.
std::string emit_report(const Report& r, ReportFormat format);

nlohmann::json record_to_json(const theorems::VerificationRecord& rec);
theorems::VerificationRecord record_from_json(const nlohmann::json& j);
std::string record_csv_row(const theorems::VerificationRecord& rec);

}  // namespace totcheck::harness
