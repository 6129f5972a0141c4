// Command-line front end: root inspection, completeness searches, verification
// campaigns, and the root-pair summary tables. Data goes to stdout (or --out),
// diagnostics to stderr.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "phiseq/phiseq.hpp"

namespace {

using namespace phiseq;

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 2;
constexpr int kExitBudget = 3;
constexpr int kExitIo = 4;
constexpr int kExitCounterexample = 5;

struct OutputTarget {
  std::string path;  // empty = stdout

  int write(const std::string& data) const {
    if (path.empty()) {
      std::cout << data;
      return kExitOk;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot open output file " << path << "\n";
      return kExitIo;
    }
    f << data;
    if (!f.flush()) {
      std::cerr << "error: short write to " << path << "\n";
      return kExitIo;
    }
    return kExitOk;
  }
};

int cmd_roots(u32 p, OutputFormat fmt, const OutputTarget& out) {
  PrimeContext ctx(p);
  const CubicProfile profile = cubic_roots(ctx);

  struct RootLine {
    fp_t value;
    u32 multiplicity;
    bool primitive;
    bool padovan_primitive;
  };
  std::vector<RootLine> lines;
  for (const auto& r : profile.roots) {
    const bool prim = ctx.is_primitive_root(r.value);
    lines.push_back({r.value, r.multiplicity, prim, prim});  // roots satisfy b^3 = b+1
  }

  std::string rendered;
  if (fmt == OutputFormat::Json) {
    json j;
    j["p"] = p;
    j["rho"] = profile.rho;
    json arr = json::array();
    for (const auto& l : lines)
      arr.push_back(json{{"value", l.value},
                         {"multiplicity", l.multiplicity},
                         {"primitive", l.primitive},
                         {"padovan_primitive", l.padovan_primitive}});
    j["roots"] = std::move(arr);
    rendered = j.dump(2) + "\n";
  } else {
    std::vector<std::vector<std::string>> cells;
    cells.push_back({"p", "rho", "root", "multiplicity", "primitive", "padovan_primitive"});
    for (const auto& l : lines)
      cells.push_back({std::to_string(p), std::to_string(profile.rho),
                       std::to_string(l.value), std::to_string(l.multiplicity),
                       l.primitive ? "true" : "false",
                       l.padovan_primitive ? "true" : "false"});
    if (fmt == OutputFormat::Csv) {
      std::string s;
      for (const auto& row : cells) {
        for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + row[i];
        s += '\n';
      }
      rendered = s;
    } else {
      rendered = detail::render_text_table(cells);
    }
  }
  return out.write(rendered);
}

int cmd_search(u32 p, u32 kappa, const std::string& mode, u64 budget, OutputFormat fmt,
               const OutputTarget& out) {
  PrimeContext ctx(p);
  std::vector<PhiSequence> found;
  if (mode == "guided") {
    if (kappa != 3) throw Error("guided search requires --kappa 3");
    found = guided_search_padovan(ctx);
  } else if (mode == "exhaustive") {
    found = exhaustive_search(ctx, kappa, budget);
  } else {  // auto: guided only helps at kappa 3 with a fully split cubic
    if (kappa == 3 && detail::saturating_pow(p, 2) > budget &&
        cubic_roots(ctx).rho == 3)
      found = guided_search_padovan(ctx);
    else
      found = exhaustive_search(ctx, kappa, budget);
  }

  std::string rendered;
  if (fmt == OutputFormat::Json) {
    json arr = json::array();
    for (const auto& seq : found) {
      json j;
      j["p"] = p;
      j["kappa"] = kappa;
      json init = json::array();
      for (fp_t v : seq.initial()) init.push_back(v);
      j["initial"] = std::move(init);
      auto gen = power_generator(seq);
      j["generator"] = gen ? json(*gen) : json(nullptr);
      arr.push_back(std::move(j));
    }
    rendered = arr.dump(2) + "\n";
  } else {
    std::vector<std::vector<std::string>> cells;
    cells.push_back({"p", "kappa", "initial", "generator"});
    for (const auto& seq : found) {
      std::string init;
      for (fp_t v : seq.initial()) init += (init.empty() ? "" : ";") + std::to_string(v);
      auto gen = power_generator(seq);
      cells.push_back({std::to_string(p), std::to_string(kappa), init,
                       gen ? std::to_string(*gen) : ""});
    }
    if (fmt == OutputFormat::Csv) {
      std::string s;
      for (const auto& row : cells) {
        for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + row[i];
        s += '\n';
      }
      rendered = s;
    } else {
      rendered = detail::render_text_table(cells);
    }
  }
  return out.write(rendered);
}

int cmd_verify(const std::string& mode_name, CampaignConfig cfg, OutputFormat fmt,
               const OutputTarget& out, const std::string& checkpoint,
               u32 checkpoint_every) {
  CampaignMode mode;
  if (mode_name == "fibonacci") mode = CampaignMode::Fibonacci;
  else if (mode_name == "padovan") mode = CampaignMode::Padovan;
  else if (mode_name == "conjecture") mode = CampaignMode::Conjecture;
  else if (mode_name == "half") mode = CampaignMode::HalfKappa;
  else throw Error("unknown verify mode: " + mode_name);
  if (cfg.budget == 0) cfg.budget = default_budget(mode);

  PreloadedRecords preloaded;
  std::ofstream journal;
  u32 pending = 0;
  RecordSink sink;
  if (!checkpoint.empty()) {
    bool have_header = false;
    {
      std::ifstream in(checkpoint);
      if (in && in.peek() != std::char_traits<char>::eof()) {
        if (!journal_load(in, mode, cfg, preloaded)) {
          std::cerr << "error: checkpoint " << checkpoint
                    << " belongs to a different run configuration\n";
          return kExitIo;
        }
        have_header = true;
        std::cerr << "resuming: " << preloaded.size() << " primes from checkpoint\n";
      }
    }
    journal.open(checkpoint, std::ios::app);
    if (!journal) {
      std::cerr << "error: cannot open checkpoint " << checkpoint << "\n";
      return kExitIo;
    }
    if (!have_header) journal << journal_header(mode, cfg).dump() << '\n';
    sink = [&](u32 p, const std::vector<VerificationRecord>& recs) {
      journal_append(journal, mode, p, recs);
      if (++pending >= checkpoint_every) {
        journal.flush();
        pending = 0;
      }
    };
  }

  const CampaignReport report =
      run_campaign(mode, cfg, preloaded.empty() ? nullptr : &preloaded, sink);
  if (journal.is_open()) journal.flush();

  const int rc = out.write(render_report(report, fmt));
  if (rc != kExitOk) return rc;
  std::cerr << "verify " << mode_name << ": " << report.totals.records << " records, "
            << report.totals.counterexamples << " counterexamples\n";
  return report.totals.counterexamples == 0 ? kExitOk : kExitCounterexample;
}

int cmd_table(const std::string& which, CampaignConfig cfg, OutputFormat fmt,
              bool match_paper, const OutputTarget& out) {
  cfg.witness_only = true;  // membership and profiles only; no uniqueness searches
  const CampaignReport report = run_campaign(CampaignMode::Padovan, cfg);
  std::string rendered;
  if (which == "5-2") {
    const auto rows = emit_table_52(report, match_paper);
    if (fmt == OutputFormat::Csv) rendered = rows_to_csv(table52_header(), rows, table52_row);
    else if (fmt == OutputFormat::Json)
      rendered = rows_to_json(table52_header(), rows, table52_row).dump(2) + "\n";
    else rendered = rows_to_text(table52_header(), rows, table52_row);
  } else if (which == "5-3") {
    const auto rows = emit_table_53(report);
    if (fmt == OutputFormat::Csv) rendered = rows_to_csv(table53_header(), rows, table53_row);
    else if (fmt == OutputFormat::Json)
      rendered = rows_to_json(table53_header(), rows, table53_row).dump(2) + "\n";
    else rendered = rows_to_text(table53_header(), rows, table53_row);
  } else {
    throw Error("unknown table: " + which + " (expected 5-2 or 5-3)");
  }
  return out.write(rendered);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Complete recurrence-sequence explorer over prime fields"};
  app.require_subcommand(1);

  std::string format = "table";
  std::string out_path;
  auto add_output_opts = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format: table, csv, json")
        ->check(CLI::IsMember({"table", "csv", "json"}));
    sub->add_option("--out", out_path, "Write data to this file instead of stdout");
  };

  // roots
  auto* roots = app.add_subcommand("roots", "Roots of X^3 - X - 1 mod p");
  add_output_opts(roots);
  u64 roots_p = 0;
  roots->add_option("--p", roots_p, "Prime modulus")->required();

  // search
  auto* search = app.add_subcommand("search", "Find all complete sequences for (p, kappa)");
  add_output_opts(search);
  u64 search_p = 0;
  u32 search_kappa = 0;
  std::string search_mode = "auto";
  u64 search_budget = 1'000'000'000;
  search->add_option("--p", search_p, "Prime modulus")->required();
  search->add_option("--kappa", search_kappa, "Recurrence offset kappa")->required();
  search->add_option("--mode", search_mode, "auto, exhaustive, or guided")
      ->check(CLI::IsMember({"auto", "exhaustive", "guided"}));
  search->add_option("--budget", search_budget, "State budget for exhaustive search");

  // verify
  auto* verify = app.add_subcommand("verify", "Run a verification campaign over a prime range");
  add_output_opts(verify);
  std::string verify_mode;
  CampaignConfig cfg;
  std::string checkpoint;
  u32 checkpoint_every = 16;
  verify->add_option("mode", verify_mode, "fibonacci, padovan, conjecture, or half")
      ->required()
      ->check(CLI::IsMember({"fibonacci", "padovan", "conjecture", "half"}));
  verify->add_option("--min", cfg.min, "Lower bound of the prime range (default 5)");
  verify->add_option("--max", cfg.max, "Upper bound of the prime range")->required();
  verify->add_option("--budget", cfg.budget,
                     "Search-state budget; 0 picks the per-mode default");
  verify->add_option("--kappa-max", cfg.kappa_max,
                     "conjecture: largest kappa to sweep (0 = p-2)");
  verify->add_flag("--exceptional-only", cfg.exceptional_only,
                   "padovan: report only strong-bound boundary primes");
  verify->add_option("--jobs", cfg.jobs, "Worker threads (0 = all cores)");
  verify->add_option("--checkpoint", checkpoint, "Resumable journal path");
  verify->add_option("--checkpoint-every", checkpoint_every,
                     "Flush the journal every N primes");

  // table
  auto* table = app.add_subcommand("table", "Root-pair summary tables");
  add_output_opts(table);
  std::string which;
  bool match_paper = false;
  CampaignConfig tcfg;
  table->add_option("which", which, "5-2 (root pairs) or 5-3 (boundary primes)")
      ->required()
      ->check(CLI::IsMember({"5-2", "5-3"}));
  table->add_option("--min", tcfg.min, "Lower bound of the prime range (default 5)");
  table->add_option("--max", tcfg.max, "Upper bound of the prime range")->required();
  table->add_flag("--match-paper", match_paper,
                  "Orient pairs with the generating root in the beta column");
  table->add_option("--jobs", tcfg.jobs, "Worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitBadInput;
  }

  const OutputTarget out{out_path};
  try {
    const OutputFormat fmt = parse_format(format);
    if (roots->parsed()) {
      if (roots_p >= kPrimeCap || !phiseq::is_prime(roots_p) || roots_p < 5) {
        std::cerr << "error: --p must be a prime in [5, 2^31)\n";
        return kExitBadInput;
      }
      return cmd_roots(static_cast<u32>(roots_p), fmt, out);
    }
    if (search->parsed()) {
      if (search_p >= kPrimeCap || !phiseq::is_prime(search_p) || search_p < 5) {
        std::cerr << "error: --p must be a prime in [5, 2^31)\n";
        return kExitBadInput;
      }
      return cmd_search(static_cast<u32>(search_p), search_kappa, search_mode,
                        search_budget, fmt, out);
    }
    if (verify->parsed())
      return cmd_verify(verify_mode, cfg, fmt, out, checkpoint, checkpoint_every);
    if (table->parsed()) return cmd_table(which, tcfg, fmt, match_paper, out);
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}
