#include "totcheck/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <stdexcept>
#include <thread>

namespace totcheck::harness {
namespace {

using Clock = std::chrono::steady_clock;
constexpr std::size_t kProgressInterval = 10'000;

bool ready(const std::shared_future<arith::Factorization>& f) {
  return f.wait_for(std::chrono::seconds(0)) == std::future_status::ready;
}

std::shared_future<arith::Factorization> ready_future(const arith::Factorization& f) {
  std::promise<arith::Factorization> p;
  p.set_value(f);
  return p.get_future().share();
}

std::string cache_line(const arith::Factorization& f) {
  nlohmann::ordered_json j;  // keep the documented v, f, c field order
  j["v"] = to_decimal(f.value);
  nlohmann::ordered_json factors = nlohmann::ordered_json::array();
  for (const auto& pp : f.factors) {
    factors.push_back({to_decimal(pp.prime), pp.exponent});
  }
  j["f"] = std::move(factors);
  j["c"] = f.complete;
  return j.dump();
}

std::optional<arith::Factorization> parse_cache_line(const std::string& line) {
  try {
    nlohmann::json j = nlohmann::json::parse(line);
    if (!j.is_object() || !j.contains("v") || !j.contains("f") || !j.contains("c")) {
      return std::nullopt;
    }
    arith::Factorization f;
    f.value = parse_natural(j.at("v").get<std::string>());
    for (const auto& e : j.at("f")) {
      if (!e.is_array() || e.size() != 2) return std::nullopt;
      const long exponent = e.at(1).get<long>();
      if (exponent < 1) return std::nullopt;
      f.factors.push_back(
          {parse_natural(e.at(0).get<std::string>()), static_cast<unsigned>(exponent)});
    }
    f.complete = j.at("c").get<bool>();
    if (f.value < 1) return std::nullopt;
    Natural prime_part = 1;
    for (const auto& pp : f.factors) prime_part *= pow_nat(pp.prime, pp.exponent);
    if (f.value % prime_part != 0) return std::nullopt;
    f.cofactor = f.value / prime_part;
    if (!arith::is_valid(f)) return std::nullopt;  // primality, ordering, complete flag
    return f;
  } catch (...) {
    return std::nullopt;
  }
}

// Split the cached cofactor with the given budget and fold any new primes in.
arith::Factorization upgrade(const arith::Factorization& base, std::uint64_t budget) {
  arith::Factorization prime_part;
  prime_part.value = base.value / base.cofactor;
  prime_part.factors = base.factors;
  return arith::merge(prime_part, arith::factorize(base.cofactor, budget));
}

struct Instance {
  CongruenceCase congruence_case;
  unsigned long n = 1;
  unsigned long first = 1;
  unsigned long second = 2;
};

}  // namespace

FactorCache::FactorCache(std::optional<std::filesystem::path> path) : path_(std::move(path)) {
  if (!path_) return;
  load();
  out_.open(*path_, std::ios::app);
  if (out_) {
    persist_ = true;
  } else {
    std::fprintf(stderr, "warning: cache path %s not writable; continuing without persistence\n",
                 path_->string().c_str());
  }
}

void FactorCache::load() {
  std::ifstream in(*path_);
  if (!in) return;  // no cache yet
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::optional<arith::Factorization> f = parse_cache_line(line);
    if (!f) continue;  // corrupt entry: dropped, later lookups miss
    auto it = entries_.find(f->value);
    if (it != entries_.end()) {
      const arith::Factorization existing = it->second.result.get();
      if (existing.complete && !f->complete) continue;  // keep the better one
    }
    entries_[f->value] = Slot{ready_future(*f), 0};
  }
}

void FactorCache::append_locked(const arith::Factorization& f) {
  if (!persist_) return;
  out_ << cache_line(f) << '\n';
  out_.flush();
  if (!out_) {
    std::fprintf(stderr, "warning: cache write failed; continuing without persistence\n");
    persist_ = false;
  }
}

std::optional<arith::Factorization> FactorCache::get(const Natural& value) {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = entries_.find(value);
  if (it != entries_.end() && ready(it->second.result)) {
    hits_.fetch_add(1);
    return it->second.result.get();
  }
  misses_.fetch_add(1);
  return std::nullopt;
}

void FactorCache::put(const arith::Factorization& f) {
  if (!arith::is_valid(f)) throw std::invalid_argument("invalid factorization");
  std::lock_guard<std::mutex> lock(mu_);
  auto it = entries_.find(f.value);
  if (it != entries_.end()) {
    if (!ready(it->second.result)) return;  // a compute is in flight
    const arith::Factorization existing = it->second.result.get();
    const bool improves = (!existing.complete && f.complete) ||
                          (!existing.complete && f.factors.size() > existing.factors.size());
    if (!improves) return;
  }
  entries_[f.value] = Slot{ready_future(f), 0};
  append_locked(f);
}

arith::Factorization FactorCache::get_or_compute(const Natural& value, std::uint64_t budget) {
  enum class Action { Wait, Fresh, Upgrade };
  Action action;
  std::promise<arith::Factorization> promise;
  std::shared_future<arith::Factorization> future;
  arith::Factorization base;
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = entries_.find(value);
    if (it == entries_.end()) {
      misses_.fetch_add(1);
      future = promise.get_future().share();
      entries_[value] = Slot{future, budget};
      action = Action::Fresh;
    } else if (!ready(it->second.result)) {
      hits_.fetch_add(1);
      future = it->second.result;
      action = Action::Wait;
    } else {
      base = it->second.result.get();
      if (base.complete || it->second.attempted_budget >= budget) {
        hits_.fetch_add(1);
        return base;
      }
      // Incomplete entry and a budget we have not tried yet: resume on the
      // cofactor. Counted as a miss since real work happens.
      misses_.fetch_add(1);
      future = promise.get_future().share();
      it->second = Slot{future, budget};
      action = Action::Upgrade;
    }
  }
  if (action == Action::Wait) return future.get();

  arith::Factorization result;
  try {
    result = action == Action::Fresh ? arith::factorize(value, budget) : upgrade(base, budget);
  } catch (...) {
    promise.set_exception(std::current_exception());
    throw;
  }
  promise.set_value(result);
  const bool improved = action == Action::Fresh || result.complete ||
                        result.factors.size() > base.factors.size();
  if (improved) {
    std::lock_guard<std::mutex> lock(mu_);
    append_locked(result);
  }
  return result;
}

Report run_sweep(const SweepConfig& config) {
  if (config.n_min < 1) throw std::invalid_argument("n_min must be >= 1");
  if (config.n_min > config.n_max) throw std::invalid_argument("n_min must be <= n_max");
  if (config.value_max < 2) throw std::invalid_argument("value_max must be >= 2");
  if (config.parallelism < 1) throw std::invalid_argument("parallelism must be >= 1");

  const auto t0 = Clock::now();

  SweepConfig canonical = config;
  std::sort(canonical.cases.begin(), canonical.cases.end());
  canonical.cases.erase(std::unique(canonical.cases.begin(), canonical.cases.end()),
                        canonical.cases.end());

  std::vector<Instance> grid;
  for (CongruenceCase c : canonical.cases) {
    for (unsigned long n = canonical.n_min; n <= canonical.n_max; ++n) {
      if (c == CongruenceCase::SumQuotient && n % 2 == 0) continue;  // no integral target
      for (unsigned long first = 1; first < canonical.value_max; ++first) {
        for (unsigned long second = first + 1; second <= canonical.value_max; ++second) {
          grid.push_back({c, n, first, second});
        }
      }
    }
  }

  FactorCache cache(canonical.cache_path);
  const theorems::FactorFn factor = [&cache](const Natural& v, std::uint64_t b) {
    return cache.get_or_compute(v, b);
  };

  Report report;
  report.config = canonical;
  report.records.resize(grid.size());

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::atomic<bool> failed{false};
  std::mutex error_mu;
  std::exception_ptr first_error;

  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= grid.size() || failed.load()) break;
      const Instance& g = grid[i];
      try {
        report.records[i] = theorems::verify_instance(
            g.congruence_case, {g.first, g.second, g.n}, canonical.mode, canonical.budget,
            factor);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!first_error) first_error = std::current_exception();
        failed.store(true);
        break;
      }
      const std::size_t d = done.fetch_add(1) + 1;
      if (d % kProgressInterval == 0) {
        std::fprintf(stderr, "[sweep] %zu/%zu\n", d, grid.size());
      }
    }
  };

  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(canonical.parallelism, std::max<std::size_t>(grid.size(), 1)));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  for (theorems::Status s :
       {theorems::Status::Verified, theorems::Status::WitnessFound,
        theorems::Status::Counterexample, theorems::Status::Unresolved,
        theorems::Status::ExtraScope, theorems::Status::Exceptional}) {
    report.counts[s] = 0;
  }
  for (const auto& rec : report.records) ++report.counts[rec.status];
  report.cache_hits = cache.hits();
  report.cache_misses = cache.misses();
  report.total_runtime_ms =
      std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  return report;
}

}  // namespace totcheck::harness
