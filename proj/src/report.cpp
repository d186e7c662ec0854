#include <cstdio>
#include <stdexcept>
#include <string>

#include "totcheck/harness.hpp"

namespace totcheck::harness {
namespace {

std::string format_ms(double ms) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", ms);
  return buf;
}

}  // namespace

nlohmann::json record_to_json(const theorems::VerificationRecord& rec) {
  nlohmann::json j;
  j["case"] = std::string(1, case_letter(rec.congruence_case));
  j["n"] = rec.params.n;
  j["first"] = to_decimal(rec.params.first);
  j["second"] = to_decimal(rec.params.second);
  j["target"] = to_decimal(rec.target);
  j["mode"] = theorems::mode_name(rec.mode);
  j["status"] = theorems::status_name(rec.status);
  if (rec.witness) j["witness"] = to_decimal(*rec.witness);
  if (rec.phi) j["phi"] = to_decimal(*rec.phi);
  if (rec.residue) j["residue"] = to_decimal(*rec.residue);
  j["elapsed_ms"] = rec.elapsed_ms;
  return j;
}

theorems::VerificationRecord record_from_json(const nlohmann::json& j) {
  theorems::VerificationRecord rec;
  const std::string case_str = j.at("case").get<std::string>();
  std::optional<CongruenceCase> c =
      case_str.size() == 1 ? case_from_letter(case_str[0]) : std::nullopt;
  if (!c) throw std::invalid_argument("unknown case letter: " + case_str);
  rec.congruence_case = *c;
  rec.params.n = j.at("n").get<unsigned long>();
  rec.params.first = parse_natural(j.at("first").get<std::string>());
  rec.params.second = parse_natural(j.at("second").get<std::string>());
  rec.target = parse_natural(j.at("target").get<std::string>());
  std::optional<theorems::Mode> mode = theorems::mode_from_name(j.at("mode").get<std::string>());
  if (!mode) throw std::invalid_argument("unknown mode");
  rec.mode = *mode;
  std::optional<theorems::Status> status =
      theorems::status_from_name(j.at("status").get<std::string>());
  if (!status) throw std::invalid_argument("unknown status");
  rec.status = *status;
  if (j.contains("witness")) rec.witness = parse_natural(j.at("witness").get<std::string>());
  if (j.contains("phi")) rec.phi = parse_natural(j.at("phi").get<std::string>());
  if (j.contains("residue")) rec.residue = parse_natural(j.at("residue").get<std::string>());
  rec.elapsed_ms = j.value("elapsed_ms", 0.0);
  return rec;
}

std::string record_csv_row(const theorems::VerificationRecord& rec) {
  std::string row;
  row += case_letter(rec.congruence_case);
  row += ',';
  row += std::to_string(rec.params.n);
  row += ',';
  row += to_decimal(rec.params.first);
  row += ',';
  row += to_decimal(rec.params.second);
  row += ',';
  row += to_decimal(rec.target);
  row += ',';
  row += theorems::mode_name(rec.mode);
  row += ',';
  row += theorems::status_name(rec.status);
  row += ',';
  if (rec.witness) row += to_decimal(*rec.witness);
  row += ',';
  if (rec.residue) row += to_decimal(*rec.residue);
  row += ',';
  row += format_ms(rec.elapsed_ms);
  return row;
}

std::string emit_report(const Report& r, ReportFormat format) {
  if (format == ReportFormat::Csv) {
    std::string out = kCsvHeader;
    out += '\n';
    for (const auto& rec : r.records) {
      out += record_csv_row(rec);
      out += '\n';
    }
    return out;
  }

  nlohmann::json config;
  std::string letters;
  for (CongruenceCase c : r.config.cases) letters += case_letter(c);
  config["cases"] = letters;
  config["n_min"] = r.config.n_min;
  config["n_max"] = r.config.n_max;
  config["value_max"] = r.config.value_max;
  config["mode"] = theorems::mode_name(r.config.mode);
  config["budget"] = r.config.budget;
  config["parallelism"] = r.config.parallelism;
  if (r.config.cache_path) {
    config["cache_path"] = r.config.cache_path->string();
  } else {
    config["cache_path"] = nullptr;
  }

  nlohmann::json counts;
  for (const auto& [status, count] : r.counts) {
    counts[theorems::status_name(status)] = count;
  }

  nlohmann::json non_verified = nlohmann::json::array();
  for (const auto& rec : r.records) {
    if (rec.status != theorems::Status::Verified) non_verified.push_back(record_to_json(rec));
  }

  nlohmann::json j;
  j["config"] = std::move(config);
  j["counts"] = std::move(counts);
  j["total_records"] = r.records.size();
  j["non_verified"] = std::move(non_verified);
  j["total_runtime_ms"] = r.total_runtime_ms;
  j["cache"] = {{"hits", r.cache_hits}, {"misses", r.cache_misses}};
  return j.dump(2) + "\n";
}

}  // namespace totcheck::harness
