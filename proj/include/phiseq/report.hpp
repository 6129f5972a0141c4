#pragma once

#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "phiseq/verify.hpp"

namespace phiseq {

using json = nlohmann::ordered_json;

enum class OutputFormat { Table, Csv, Json };

inline OutputFormat parse_format(const std::string& s) {
  if (s == "table") return OutputFormat::Table;
  if (s == "csv") return OutputFormat::Csv;
  if (s == "json") return OutputFormat::Json;
  throw Error("unknown format: " + s);
}

namespace detail {

inline std::string join_witnesses(const std::vector<Witness>& ws) {
  std::string s;
  for (const auto& w : ws) {
    if (!s.empty()) s += ';';
    s += std::to_string(w.b);
  }
  return s;
}

inline std::string status_field(const VerificationRecord& r) {
  std::string s = to_string(r.status);
  if (r.status == RecordStatus::Skipped && !r.skip_reason.empty())
    s += ":" + r.skip_reason;
  return s;
}

inline std::string bool_field(bool b) { return b ? "true" : "false"; }

/// Minimal aligned-text renderer: header plus rows, columns padded to fit.
inline std::string render_text_table(const std::vector<std::vector<std::string>>& cells) {
  if (cells.empty()) return "";
  std::vector<std::size_t> width(cells[0].size(), 0);
  for (const auto& row : cells)
    for (std::size_t i = 0; i < row.size(); ++i)
      width[i] = std::max(width[i], row[i].size());
  std::ostringstream out;
  for (const auto& row : cells) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << "  ";
      out << std::left << std::setw(static_cast<int>(width[i])) << row[i];
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace detail

inline json profile_to_json(const OrderProfile& pr) {
  json j;
  j["alpha"] = pr.alpha;
  j["beta"] = pr.beta;
  j["alpha_primitive"] = pr.alpha_primitive;
  j["beta_primitive"] = pr.beta_primitive;
  j["N"] = pr.ratio_order;
  j["k_min"] = pr.k_min;
  j["j0"] = pr.j0;
  j["j0_prime"] = pr.j0_prime;
  j["ell"] = pr.ell;
  j["singleton"] = pr.singleton;
  j["strong_ok"] = pr.strong_ok;
  j["weak_ok"] = pr.weak_ok;
  return j;
}

inline OrderProfile profile_from_json(u32 p, const json& j) {
  OrderProfile pr;
  pr.p = p;
  pr.alpha = j.at("alpha").get<fp_t>();
  pr.beta = j.at("beta").get<fp_t>();
  pr.alpha_primitive = j.at("alpha_primitive").get<bool>();
  pr.beta_primitive = j.at("beta_primitive").get<bool>();
  pr.ratio_order = j.at("N").get<u32>();
  pr.k_min = j.at("k_min").get<u32>();
  pr.j0 = j.at("j0").get<u32>();
  pr.j0_prime = j.at("j0_prime").get<u32>();
  pr.ell = j.at("ell").get<u32>();
  pr.singleton = j.at("singleton").get<bool>();
  pr.strong_ok = j.at("strong_ok").get<bool>();
  pr.weak_ok = j.at("weak_ok").get<bool>();
  return pr;
}

inline json record_to_json(CampaignMode mode, const VerificationRecord& r) {
  json j;
  j["p"] = r.p;
  if (mode == CampaignMode::Conjecture) j["kappa"] = r.kappa;
  if (mode == CampaignMode::Padovan) j["rho"] = r.rho;
  json ws = json::array();
  for (const auto& w : r.witnesses) ws.push_back(json{{"b", w.b}, {"kappa", w.kappa}});
  j["witnesses"] = std::move(ws);
  j["complete_count"] = r.complete_count;
  j["method"] = r.method;
  j["status"] = to_string(r.status);
  if (!r.skip_reason.empty()) j["skip_reason"] = r.skip_reason;
  if (mode == CampaignMode::Padovan) {
    j["exceptional"] = r.exceptional;
    j["weak_covered"] = r.weak_covered;
    json ps = json::array();
    for (const auto& pr : r.profiles) ps.push_back(profile_to_json(pr));
    j["profiles"] = std::move(ps);
  }
  if (mode == CampaignMode::HalfKappa && r.half) {
    j["kappa_low"] = r.half->kappa_low;
    j["b_low"] = r.half->b_low;
    j["complete_low"] = r.half->complete_low;
    j["kappa_high"] = r.half->kappa_high;
    j["b_high"] = r.half->b_high;
    j["complete_high"] = r.half->complete_high;
    j["crosschecked"] = r.crosschecked;
  }
  return j;
}

inline VerificationRecord record_from_json(CampaignMode mode, const json& j) {
  VerificationRecord r;
  r.p = j.at("p").get<u32>();
  r.kappa = mode == CampaignMode::Fibonacci ? 2
            : mode == CampaignMode::Padovan ? 3
            : mode == CampaignMode::Conjecture ? j.at("kappa").get<u32>()
                                               : 0;
  if (mode == CampaignMode::Padovan) r.rho = j.at("rho").get<u32>();
  for (const auto& w : j.at("witnesses"))
    r.witnesses.push_back({w.at("b").get<fp_t>(), w.at("kappa").get<u32>()});
  r.complete_count = j.at("complete_count").get<u32>();
  r.method = j.at("method").get<std::string>();
  const std::string status = j.at("status").get<std::string>();
  if (status == "verified") r.status = RecordStatus::Verified;
  else if (status == "exceptional-verified") r.status = RecordStatus::ExceptionalVerified;
  else if (status == "counterexample") r.status = RecordStatus::Counterexample;
  else r.status = RecordStatus::Skipped;
  if (j.contains("skip_reason")) r.skip_reason = j.at("skip_reason").get<std::string>();
  if (mode == CampaignMode::Padovan) {
    r.exceptional = j.at("exceptional").get<bool>();
    r.weak_covered = j.at("weak_covered").get<bool>();
    for (const auto& pj : j.at("profiles")) r.profiles.push_back(profile_from_json(r.p, pj));
  }
  if (mode == CampaignMode::HalfKappa) {
    HalfKappaAnalysis h;
    h.kappa_low = j.at("kappa_low").get<u32>();
    h.b_low = j.at("b_low").get<fp_t>();
    h.complete_low = j.at("complete_low").get<bool>();
    h.kappa_high = j.at("kappa_high").get<u32>();
    h.b_high = j.at("b_high").get<fp_t>();
    h.complete_high = j.at("complete_high").get<bool>();
    r.half = h;
    r.crosschecked = j.at("crosschecked").get<bool>();
  }
  return r;
}

/// Serialized reports must be byte-identical for the same range and
/// configuration no matter how many workers ran, so the worker count is
/// deliberately left out of the config echo and timings are never emitted.
inline json report_to_json(const CampaignReport& rep) {
  json j;
  j["mode"] = to_string(rep.mode);
  j["min"] = rep.config.min;
  j["max"] = rep.config.max;
  json cfg;
  cfg["budget"] = rep.config.budget;
  cfg["kappa_max"] = rep.config.kappa_max;
  cfg["exceptional_only"] = rep.config.exceptional_only;
  cfg["witness_only"] = rep.config.witness_only;
  j["config"] = std::move(cfg);
  json totals;
  totals["primes"] = rep.totals.primes;
  totals["records"] = rep.totals.records;
  totals["verified"] = rep.totals.verified;
  totals["exceptional_verified"] = rep.totals.exceptional_verified;
  totals["counterexamples"] = rep.totals.counterexamples;
  totals["skipped"] = rep.totals.skipped;
  totals["complete_sequences"] = rep.totals.complete_sequences;
  j["totals"] = std::move(totals);
  json recs = json::array();
  for (const auto& r : rep.records) recs.push_back(record_to_json(rep.mode, r));
  j["records"] = std::move(recs);
  return j;
}

inline std::vector<std::string> report_csv_header(CampaignMode mode) {
  switch (mode) {
    case CampaignMode::Fibonacci:
      return {"p", "witnesses", "complete_count", "method", "status"};
    case CampaignMode::Padovan:
      return {"p", "rho", "witnesses", "complete_count", "method", "status",
              "exceptional", "weak_covered"};
    case CampaignMode::Conjecture:
      return {"p", "kappa", "witnesses", "complete_count", "method", "status"};
    case CampaignMode::HalfKappa:
      return {"p", "kappa_low", "b_low", "complete_low", "kappa_high", "b_high",
              "complete_high", "crosschecked", "status"};
  }
  return {};
}

inline std::vector<std::string> record_csv_row(CampaignMode mode,
                                               const VerificationRecord& r) {
  using detail::bool_field;
  switch (mode) {
    case CampaignMode::Fibonacci:
      return {std::to_string(r.p), detail::join_witnesses(r.witnesses),
              std::to_string(r.complete_count), r.method, detail::status_field(r)};
    case CampaignMode::Padovan:
      return {std::to_string(r.p), std::to_string(r.rho),
              detail::join_witnesses(r.witnesses), std::to_string(r.complete_count),
              r.method, detail::status_field(r), bool_field(r.exceptional),
              bool_field(r.weak_covered)};
    case CampaignMode::Conjecture:
      return {std::to_string(r.p), std::to_string(r.kappa),
              detail::join_witnesses(r.witnesses), std::to_string(r.complete_count),
              r.method, detail::status_field(r)};
    case CampaignMode::HalfKappa: {
      const auto& h = *r.half;
      return {std::to_string(r.p), std::to_string(h.kappa_low), std::to_string(h.b_low),
              bool_field(h.complete_low), std::to_string(h.kappa_high),
              std::to_string(h.b_high), bool_field(h.complete_high),
              bool_field(r.crosschecked), detail::status_field(r)};
    }
  }
  return {};
}

inline std::string report_to_csv(const CampaignReport& rep) {
  std::ostringstream out;
  auto emit = [&out](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  };
  emit(report_csv_header(rep.mode));
  for (const auto& r : rep.records) emit(record_csv_row(rep.mode, r));
  return out.str();
}

inline std::string report_to_text(const CampaignReport& rep) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back(report_csv_header(rep.mode));
  for (const auto& r : rep.records) cells.push_back(record_csv_row(rep.mode, r));
  return detail::render_text_table(cells);
}

inline std::string render_report(const CampaignReport& rep, OutputFormat fmt) {
  switch (fmt) {
    case OutputFormat::Csv: return report_to_csv(rep);
    case OutputFormat::Json: return report_to_json(rep).dump(2) + "\n";
    case OutputFormat::Table:
    default: return report_to_text(rep);
  }
}

// ---- root-pair tables -----------------------------------------------------

inline std::vector<std::string> table52_header() {
  return {"p", "alpha", "beta", "N", "k_min", "p_minus_1_over_N", "j0", "j0_prime"};
}

inline std::vector<std::string> table52_row(const TableRow52& r) {
  return {std::to_string(r.p), std::to_string(r.alpha), std::to_string(r.beta),
          std::to_string(r.ratio_order), std::to_string(r.k_min),
          std::to_string(r.k_floor), std::to_string(r.j0), std::to_string(r.j0_prime)};
}

inline std::vector<std::string> table53_header() {
  return {"p", "N", "k_min", "j0", "j0_prime", "ell"};
}

inline std::vector<std::string> table53_row(const TableRow53& r) {
  return {std::to_string(r.p), std::to_string(r.ratio_order), std::to_string(r.k_min),
          std::to_string(r.j0), std::to_string(r.j0_prime), std::to_string(r.ell)};
}

template <typename Row>
std::string rows_to_csv(const std::vector<std::string>& header, const std::vector<Row>& rows,
                        std::vector<std::string> (*to_row)(const Row&)) {
  std::ostringstream out;
  auto emit = [&out](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  };
  emit(header);
  for (const auto& r : rows) emit(to_row(r));
  return out.str();
}

template <typename Row>
std::string rows_to_text(const std::vector<std::string>& header, const std::vector<Row>& rows,
                         std::vector<std::string> (*to_row)(const Row&)) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back(header);
  for (const auto& r : rows) cells.push_back(to_row(r));
  return detail::render_text_table(cells);
}

template <typename Row>
json rows_to_json(const std::vector<std::string>& header, const std::vector<Row>& rows,
                  std::vector<std::string> (*to_row)(const Row&)) {
  json arr = json::array();
  for (const auto& r : rows) {
    const auto row = to_row(r);
    json obj;
    for (std::size_t i = 0; i < header.size(); ++i) obj[header[i]] = row[i];
    arr.push_back(std::move(obj));
  }
  return arr;
}

// ---- checkpoint journal -----------------------------------------------------

/// Line-delimited JSON, one header line describing the run followed by one
/// line per finished prime. A journal is resumable only under the exact same
/// mode/range/config.
inline json journal_header(CampaignMode mode, const CampaignConfig& cfg) {
  json j;
  j["journal"] = "phiseq-verify";
  j["mode"] = to_string(mode);
  j["min"] = cfg.min;
  j["max"] = cfg.max;
  j["budget"] = cfg.budget;
  j["kappa_max"] = cfg.kappa_max;
  j["exceptional_only"] = cfg.exceptional_only;
  j["witness_only"] = cfg.witness_only;
  return j;
}

inline void journal_append(std::ostream& out, CampaignMode mode, u32 p,
                           const std::vector<VerificationRecord>& recs) {
  json j;
  j["p"] = p;
  json arr = json::array();
  for (const auto& r : recs) arr.push_back(record_to_json(mode, r));
  j["records"] = std::move(arr);
  out << j.dump() << '\n';
}

/// Loads a journal; returns false (leaving `out` empty) when the header does
/// not match the requested run.
inline bool journal_load(std::istream& in, CampaignMode mode, const CampaignConfig& cfg,
                         PreloadedRecords& out) {
  std::string line;
  if (!std::getline(in, line)) return false;
  json header = json::parse(line, nullptr, false);
  if (header.is_discarded() || header != journal_header(mode, cfg)) return false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) continue;  // torn tail line from an interrupted run
    std::vector<VerificationRecord> recs;
    for (const auto& rj : j.at("records")) recs.push_back(record_from_json(mode, rj));
    out[j.at("p").get<u32>()] = std::move(recs);
  }
  return true;
}

}  // namespace phiseq
