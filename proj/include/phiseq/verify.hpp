#pragma once

#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "phiseq/padovan.hpp"

namespace phiseq {

enum class CampaignMode { Fibonacci, Padovan, Conjecture, HalfKappa };
enum class RecordStatus { Verified, ExceptionalVerified, Counterexample, Skipped };

inline std::string to_string(CampaignMode m) {
  switch (m) {
    case CampaignMode::Fibonacci: return "fibonacci";
    case CampaignMode::Padovan: return "padovan";
    case CampaignMode::Conjecture: return "conjecture";
    case CampaignMode::HalfKappa: return "half";
  }
  return "?";
}

inline std::string to_string(RecordStatus s) {
  switch (s) {
    case RecordStatus::Verified: return "verified";
    case RecordStatus::ExceptionalVerified: return "exceptional-verified";
    case RecordStatus::Counterexample: return "counterexample";
    case RecordStatus::Skipped: return "skipped";
  }
  return "?";
}

struct Witness {
  fp_t b;
  u32 kappa;
  bool operator==(const Witness&) const = default;
};

/// Per-prime outcome of one campaign check. `exceptional` marks primes where
/// some root pair fails the strong bound with k_min at its floor;
/// `weak_covered` narrows that to pairs still inside the weak bound.
struct VerificationRecord {
  u32 p = 0;
  u32 kappa = 0;  // 2 / 3 / the swept kappa; 0 for the half-kappa pair check
  u32 rho = 0;
  std::vector<Witness> witnesses;
  u32 complete_count = 0;
  std::string method;
  RecordStatus status = RecordStatus::Verified;
  std::string skip_reason;
  bool exceptional = false;
  bool weak_covered = false;
  std::vector<OrderProfile> profiles;
  std::optional<HalfKappaAnalysis> half;
  bool crosschecked = false;
  double elapsed_ms = 0;  // diagnostics only, never serialized
};

struct CampaignConfig {
  u64 min = 5;
  u64 max = 0;
  u64 budget = 0;     // 0 = per-mode default
  u32 kappa_max = 0;  // conjecture sweeps kappa in [2, min(p-2, kappa_max)]; 0 = p-2
  bool exceptional_only = false;
  bool witness_only = false;  // existence checks only; used by the table emitters
  u32 jobs = 0;               // 0 = hardware concurrency
};

struct CampaignTotals {
  u64 primes = 0;
  u64 records = 0;
  u64 verified = 0;
  u64 exceptional_verified = 0;
  u64 counterexamples = 0;
  u64 skipped = 0;
  u64 complete_sequences = 0;
};

struct CampaignReport {
  CampaignMode mode = CampaignMode::Padovan;
  CampaignConfig config;
  std::vector<VerificationRecord> records;  // ascending by (p, kappa)
  CampaignTotals totals;
};

inline u64 default_budget(CampaignMode m) {
  switch (m) {
    case CampaignMode::Conjecture: return 10'000'000;
    case CampaignMode::HalfKappa: return 5'000'000;  // covers the p <= 13 cross-check
    default: return 1'000'000;
  }
}

namespace detail {

/// found == { b^n : b witness }? Both sides are sorted by a_1, so a single
/// aligned pass decides it.
inline bool matches_witness_powers(const std::vector<PhiSequence>& found,
                                   const std::vector<Witness>& witnesses) {
  if (found.size() != witnesses.size()) return false;
  for (std::size_t i = 0; i < found.size(); ++i) {
    auto gen = power_generator(found[i]);
    if (!gen || *gen != witnesses[i].b || !found[i].complete()) return false;
  }
  return true;
}

/// Fibonacci-side consistency of the k = 4 power-sum route for p >= 7:
/// the termwise sum of fourth powers must equal -6 A^2 B^2 computed from the
/// closed form over the two quadratic roots.
inline bool fourth_power_route_ok(const PrimeContext& ctx, const PhiSequence& seq,
                                  fp_t alpha, fp_t beta) {
  if (ctx.p() < 7) return true;
  const fp_t b = seq.terms()[1];
  const fp_t d = ctx.sub(alpha, beta);
  const fp_t a_coef = ctx.mul(ctx.sub(b, beta), ctx.inv(d));
  const fp_t b_coef = ctx.mul(ctx.sub(b, alpha), ctx.inv(ctx.neg(d)));
  const fp_t prod = ctx.mul(a_coef, b_coef);
  const fp_t rhs = ctx.neg(ctx.mul(6 % ctx.p(), ctx.mul(prod, prod)));
  return power_sum(seq, 4) == rhs;
}

inline VerificationRecord fibonacci_record(const PrimeContext& ctx,
                                           const CampaignConfig& cfg) {
  const u32 p = ctx.p();
  VerificationRecord rec;
  rec.p = p;
  rec.kappa = 2;

  std::vector<fp_t> roots;  // roots of x^2 = x + 1
  for (fp_t b = 1; b < p; ++b)
    if (ctx.mul(b, b) == ctx.add(b, 1)) roots.push_back(b);
  for (fp_t b : roots)
    if (ctx.is_primitive_root(b)) rec.witnesses.push_back({b, 2});

  if (!cfg.witness_only && p <= cfg.budget) {
    auto found = exhaustive_search(ctx, 2, cfg.budget);
    rec.method = "exhaustive";
    rec.complete_count = static_cast<u32>(found.size());
    bool ok = matches_witness_powers(found, rec.witnesses);
    if (ok && roots.size() == 2)
      for (const auto& seq : found)
        ok = ok && fourth_power_route_ok(ctx, seq, roots[0], roots[1]);
    rec.status = ok ? RecordStatus::Verified : RecordStatus::Counterexample;
  } else {
    rec.method = "witness-only";
    rec.complete_count = static_cast<u32>(rec.witnesses.size());
    for (const auto& w : rec.witnesses)
      if (!from_primitive_root(ctx, w.b).second.complete())
        rec.status = RecordStatus::Counterexample;
  }
  return rec;
}

inline VerificationRecord padovan_record(const PrimeContext& ctx,
                                         const CampaignConfig& cfg) {
  const u32 p = ctx.p();
  VerificationRecord rec;
  rec.p = p;
  rec.kappa = 3;

  const CubicProfile profile = cubic_roots(ctx);
  rec.rho = profile.rho;
  std::vector<bool> primitive(profile.roots.size());
  for (std::size_t i = 0; i < profile.roots.size(); ++i) {
    primitive[i] = ctx.is_primitive_root(profile.roots[i].value);
    if (primitive[i]) rec.witnesses.push_back({profile.roots[i].value, 3});
  }

  if (rec.rho == 3 && !rec.witnesses.empty()) {
    // All three unordered pairs are profiled for the tables, but only pairs
    // holding a generating root can carry a complete sequence in reduced
    // closed form, so the boundary classification reads just those.
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i + 1; j < 3; ++j)
        rec.profiles.push_back(
            order_profile(ctx, profile.roots[i].value, profile.roots[j].value));
    bool any_beyond = false, all_weak = true;
    for (const auto& pr : rec.profiles) {
      if (!pr.alpha_primitive && !pr.beta_primitive) continue;
      if (pr.beyond_strong()) {
        any_beyond = true;
        all_weak = all_weak && pr.weak_ok;
      }
    }
    rec.exceptional = any_beyond;
    rec.weak_covered = any_beyond && all_weak;
  }

  const u64 pair_states = u64{p} * p;
  // In exceptional-only sweeps the non-qualifying records are filtered out of
  // the report, so they get the cheap existence check only.
  const bool want_search =
      cfg.exceptional_only ? rec.exceptional : !cfg.witness_only;
  bool ok = true;
  if (rec.rho == 0) {
    // The annihilator 1 - X^2 - X^3 has no root, so no order-3 sequence can
    // be periodic with a zero generating polynomial on F_p*; nothing to search.
    rec.method = "annihilator";
    rec.complete_count = 0;
  } else if (!want_search) {
    rec.method = "witness-only";
    rec.complete_count = static_cast<u32>(rec.witnesses.size());
    for (const auto& w : rec.witnesses)
      ok = ok && from_primitive_root(ctx, w.b).second.complete();
  } else if (rec.rho == 3) {
    std::vector<PhiSequence> found;
    if (cfg.exceptional_only && rec.exceptional) {
      found = guided_search_padovan(ctx, profile);
      rec.method = "guided";
    } else if (pair_states <= cfg.budget) {
      found = exhaustive_search(ctx, 3, cfg.budget);
      rec.method = "exhaustive";
      if (rec.exceptional) {
        auto guided = guided_search_padovan(ctx, profile);
        ok = ok && guided.size() == found.size() &&
             std::equal(guided.begin(), guided.end(), found.begin());
        rec.method = "exhaustive+guided";
      }
    } else {
      found = guided_search_padovan(ctx, profile);
      rec.method = "guided";
    }
    rec.complete_count = static_cast<u32>(found.size());
    ok = ok && matches_witness_powers(found, rec.witnesses);
  } else {  // rho 1 or 2
    if (pair_states <= cfg.budget) {
      auto found = exhaustive_search(ctx, 3, cfg.budget);
      rec.method = "exhaustive";
      rec.complete_count = static_cast<u32>(found.size());
      ok = matches_witness_powers(found, rec.witnesses);
    } else {
      rec.method = "witness-only";
      rec.complete_count = static_cast<u32>(rec.witnesses.size());
      for (const auto& w : rec.witnesses)
        ok = ok && from_primitive_root(ctx, w.b).second.complete();
    }
  }

  if (!ok)
    rec.status = RecordStatus::Counterexample;
  else if (rec.exceptional && !rec.weak_covered && rec.method != "witness-only")
    rec.status = RecordStatus::ExceptionalVerified;
  else
    rec.status = RecordStatus::Verified;
  return rec;
}

inline std::vector<VerificationRecord> conjecture_records(const PrimeContext& ctx,
                                                          const CampaignConfig& cfg) {
  const u32 p = ctx.p();
  const u32 kappa_hi = cfg.kappa_max ? std::min(cfg.kappa_max, p - 2) : p - 2;
  std::vector<VerificationRecord> recs;
  for (u32 kappa = 2; kappa <= kappa_hi; ++kappa) {
    VerificationRecord rec;
    rec.p = p;
    rec.kappa = kappa;
    const u64 states = saturating_pow(p, kappa - 1);
    if (states > cfg.budget) {
      rec.status = RecordStatus::Skipped;
      rec.skip_reason = "budget";
      rec.method = "none";
      recs.push_back(std::move(rec));
      continue;
    }
    for (fp_t b : phi_kappa_primitive_roots(ctx, kappa)) rec.witnesses.push_back({b, kappa});
    auto found = exhaustive_search(ctx, kappa, cfg.budget);
    rec.method = "exhaustive";
    rec.complete_count = static_cast<u32>(found.size());
    rec.status = matches_witness_powers(found, rec.witnesses)
                     ? RecordStatus::Verified
                     : RecordStatus::Counterexample;
    recs.push_back(std::move(rec));
  }
  return recs;
}

inline VerificationRecord half_kappa_record(const PrimeContext& ctx,
                                            const CampaignConfig& cfg) {
  const u32 p = ctx.p();
  VerificationRecord rec;
  rec.p = p;
  rec.half = half_kappa_analysis(ctx);
  const auto& h = *rec.half;
  bool ok = h.complete_low == h.complete_high;  // conjugation pairs them up
  if (h.complete_low) {
    rec.witnesses.push_back({h.b_low, h.kappa_low});
    rec.witnesses.push_back({h.b_high, h.kappa_high});
    rec.complete_count = 2;
    auto [klow, seq] = from_primitive_root(ctx, h.b_low);
    ok = ok && klow == h.kappa_low && seq.complete();
    auto conj = conjugate(seq);
    ok = ok && conj.kappa() == h.kappa_high && conj.complete() &&
         power_generator(conj).value_or(0) == h.b_high;
  }
  if (p <= 13 && !cfg.witness_only &&
      saturating_pow(p, h.kappa_high - 1) <= cfg.budget) {
    rec.crosschecked = true;
    rec.method = "closed-form+exhaustive";
    auto found_low = exhaustive_search(ctx, h.kappa_low, cfg.budget);
    auto found_high = exhaustive_search(ctx, h.kappa_high, cfg.budget);
    const std::size_t want = h.complete_low ? 1 : 0;
    ok = ok && found_low.size() == want && found_high.size() == want;
    if (h.complete_low && ok) {
      ok = power_generator(found_low[0]).value_or(0) == h.b_low &&
           power_generator(found_high[0]).value_or(0) == h.b_high;
    }
  } else {
    rec.method = "closed-form";
  }
  rec.status = ok ? RecordStatus::Verified : RecordStatus::Counterexample;
  return rec;
}

}  // namespace detail

using PreloadedRecords = std::map<u32, std::vector<VerificationRecord>>;
using RecordSink = std::function<void(u32 p, const std::vector<VerificationRecord>&)>;

/// Sweeps the primes of [min, max], one prime per work unit, and assembles a
/// deterministic report: results land in per-prime slots, so the output is
/// independent of worker count and scheduling. `preloaded` records (from a
/// checkpoint journal) are reused verbatim; `sink` observes every freshly
/// computed prime under a lock.
inline CampaignReport run_campaign(CampaignMode mode, CampaignConfig cfg,
                                   const PreloadedRecords* preloaded = nullptr,
                                   const RecordSink& sink = {}) {
  if (cfg.max == 0) throw Error("run_campaign: a --max bound is required");
  if (cfg.max >= kPrimeCap) throw InvalidPrime("run_campaign: max must be below 2^31");
  if (cfg.budget == 0) cfg.budget = default_budget(mode);

  const std::vector<u32> primes = primes_in_range(std::max<u64>(cfg.min, 5), cfg.max);
  std::vector<std::vector<VerificationRecord>> slots(primes.size());
  std::atomic<std::size_t> cursor{0};
  std::mutex sink_mutex;

  auto worker = [&]() {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= primes.size()) return;
      const u32 p = primes[i];
      if (preloaded) {
        auto it = preloaded->find(p);
        if (it != preloaded->end()) {
          slots[i] = it->second;
          continue;
        }
      }
      const auto t0 = std::chrono::steady_clock::now();
      PrimeContext ctx(p);
      std::vector<VerificationRecord> recs;
      switch (mode) {
        case CampaignMode::Fibonacci:
          recs.push_back(detail::fibonacci_record(ctx, cfg));
          break;
        case CampaignMode::Padovan:
          recs.push_back(detail::padovan_record(ctx, cfg));
          break;
        case CampaignMode::Conjecture:
          recs = detail::conjecture_records(ctx, cfg);
          break;
        case CampaignMode::HalfKappa:
          recs.push_back(detail::half_kappa_record(ctx, cfg));
          break;
      }
      const double ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
              .count();
      for (auto& r : recs) r.elapsed_ms = ms / static_cast<double>(recs.size());
      if (sink) {
        std::lock_guard<std::mutex> lock(sink_mutex);
        sink(p, recs);
      }
      slots[i] = std::move(recs);
    }
  };

  u32 jobs = cfg.jobs ? cfg.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<u32>(std::min<std::size_t>(jobs, std::max<std::size_t>(primes.size(), 1)));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (u32 t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  CampaignReport report;
  report.mode = mode;
  report.config = cfg;
  for (auto& s : slots)
    for (auto& r : s) {
      if (cfg.exceptional_only && mode == CampaignMode::Padovan && !r.exceptional)
        continue;
      report.records.push_back(std::move(r));
    }

  std::map<u32, bool> prime_seen;
  for (const auto& r : report.records) {
    prime_seen[r.p] = true;
    ++report.totals.records;
    report.totals.complete_sequences += r.complete_count;
    switch (r.status) {
      case RecordStatus::Verified: ++report.totals.verified; break;
      case RecordStatus::ExceptionalVerified: ++report.totals.exceptional_verified; break;
      case RecordStatus::Counterexample: ++report.totals.counterexamples; break;
      case RecordStatus::Skipped: ++report.totals.skipped; break;
    }
  }
  report.totals.primes = prime_seen.size();
  return report;
}

inline CampaignReport verify_fibonacci(const CampaignConfig& cfg) {
  return run_campaign(CampaignMode::Fibonacci, cfg);
}
inline CampaignReport verify_padovan(const CampaignConfig& cfg) {
  return run_campaign(CampaignMode::Padovan, cfg);
}
inline CampaignReport verify_conjecture(const CampaignConfig& cfg) {
  return run_campaign(CampaignMode::Conjecture, cfg);
}
inline CampaignReport verify_half_kappa(const CampaignConfig& cfg) {
  return run_campaign(CampaignMode::HalfKappa, cfg);
}

/// Root-pair table: one row per stored profile of every admitting record.
struct TableRow52 {
  u32 p;
  fp_t alpha, beta;
  u32 ratio_order, k_min, k_floor, j0, j0_prime;
};

/// `match_paper` flips pairs so the generating (primitive) root sits in the
/// beta column when exactly one end is primitive; ties keep alpha < beta.
inline std::vector<TableRow52> emit_table_52(const CampaignReport& report,
                                             bool match_paper = false) {
  std::vector<TableRow52> rows;
  for (const auto& rec : report.records) {
    if (rec.rho != 3 || rec.witnesses.empty()) continue;
    for (const auto& profile : rec.profiles) {
      OrderProfile pr = profile;
      if (match_paper && pr.alpha_primitive && !pr.beta_primitive) pr = pr.flipped();
      rows.push_back({rec.p, pr.alpha, pr.beta, pr.ratio_order, pr.k_min, pr.k_floor(),
                      pr.j0, pr.j0_prime});
    }
  }
  return rows;
}

/// Boundary-case table: pairs that fail the strong bound with k_min at its
/// floor. weak_covered is carried for reporting even though the canonical
/// CSV column set omits it.
struct TableRow53 {
  u32 p;
  u32 ratio_order, k_min, j0, j0_prime, ell;
  bool weak_covered;
};

inline std::vector<TableRow53> emit_table_53(const CampaignReport& report) {
  std::vector<TableRow53> rows;
  for (const auto& rec : report.records) {
    if (rec.rho != 3 || rec.witnesses.empty()) continue;
    for (const auto& pr : rec.profiles)
      if ((pr.alpha_primitive || pr.beta_primitive) && pr.beyond_strong())
        rows.push_back({rec.p, pr.ratio_order, pr.k_min, pr.j0, pr.j0_prime, pr.ell,
                        pr.weak_ok});
  }
  return rows;
}

}  // namespace phiseq
