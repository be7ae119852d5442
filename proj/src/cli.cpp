#include "nilsep/cli.hpp"

#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "nilsep/errors.hpp"
#include "nilsep/growth.hpp"
#include "nilsep/witness.hpp"

namespace nilsep {

namespace {

const char* family_name(Family f) {
  switch (f) {
    case Family::Abelian: return "abelian";
    case Family::Heisenberg: return "heisenberg";
    case Family::Unitriangular: return "unitriangular";
    case Family::HeisenbergTimesZ: return "heisenberg-x-z";
  }
  return "?";
}

int cmd_list(std::ostream& out) {
  for (const auto& name : builtin_group_names()) {
    const auto ctx = make_group(name);
    out << name << "  family=" << family_name(ctx.family()) << " dim=" << ctx.dim() << " hirsch=" << ctx.hirsch()
        << " class=" << ctx.nilpotency_class() << " generators=";
    for (std::size_t i = 0; i < ctx.hirsch(); ++i) out << (i ? "," : "") << ctx.generator_names()[i];
    out << '\n';
  }
  return 0;
}

int cmd_verify(const std::string& path, std::uint64_t budget, std::ostream& out) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::string line;
  int failures = 0, total = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++total;
    const auto cert = certificate_from_json(line);
    const auto ctx = make_group(cert.group);
    const auto r = verify_certificate(ctx, cert, budget);
    out << (r.ok ? "ok" : "FAILED") << ' ' << to_string(cert.kind) << " modulus=" << cert.spec.modulus
        << " method=" << to_string(r.method) << " (" << r.detail << ")\n";
    if (!r.ok) ++failures;
  }
  out << total - failures << '/' << total << " certificates verified\n";
  return failures == 0 ? 0 : 2;
}

int cmd_measure(const std::string& group, const std::string& mode, int radius, std::uint64_t budget,
                const std::string& dir, bool raw, std::ostream& out) {
  const auto ctx = make_group(group);
  GrowthOptions opts;
  opts.budget = budget;
  opts.raw_oracle = raw;
  const GrowthRun run = mode == "rf" ? measure_rf_growth(ctx, radius, opts) : measure_conj_growth(ctx, radius, opts);

  std::vector<FitReport> fits;
  for (const auto model : {FitModel::PowerLaw, FitModel::PolyLog}) {
    try {
      fits.push_back(fit_exponent(run.samples, model));
    } catch (const ContractViolation&) {
      // too few samples for a fit
    }
  }
  const std::string stem = group + "-" + mode;
  const auto files = emit_report(run.samples, fits, dir, stem, group + " " + mode + " growth");
  for (const auto& s : run.samples) out << "n=" << s.n << " value=" << s.value.get_str() << " count=" << s.witness_count << '\n';
  for (const auto& f : fits)
    out << to_string(f.model) << " exponent=" << f.exponent << " residual=" << f.residual << " range=[" << f.n_min
        << ',' << f.n_max << "]\n";
  if (run.partial) out << "partial: " << run.note << '\n';
  out << "wrote " << files.csv << ' ' << files.json << ' ' << files.gnuplot << '\n';
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Separating quotients and growth measurements for torsion-free nilpotent groups", "nilsep"};
  app.require_subcommand(1);
  std::uint64_t budget = default_budget();

  std::string group, gamma, eta, cert_file, mode = "conj", dir = "report";
  int radius = 6;
  bool raw = false;

  auto* list = app.add_subcommand("list-groups", "Built-in groups");

  auto* witness = app.add_subcommand("witness", "Quotient separating the conjugacy classes of two elements");
  witness->add_option("--group", group)->required();
  witness->add_option("--gamma", gamma)->required();
  witness->add_option("--eta", eta)->required();
  witness->add_option("--budget", budget);

  auto* rf = app.add_subcommand("rf-witness", "Finite quotient in which an element survives");
  rf->add_option("--group", group)->required();
  rf->add_option("--gamma", gamma)->required();
  rf->add_option("--budget", budget);

  auto* measure = app.add_subcommand("measure", "Measure restricted F or Conj over balls");
  measure->add_option("--group", group)->required()->check(CLI::IsMember(builtin_group_names()));
  measure->add_option("--mode", mode)->check(CLI::IsMember({"rf", "conj"}));
  measure->add_option("--radius", radius)->check(CLI::Range(1, 64));
  measure->add_option("--budget", budget);
  measure->add_option("--out", dir);
  measure->add_flag("--raw", raw, "Exhaustive raw-pair oracle (radius <= 3)");

  auto* verify = app.add_subcommand("verify", "Re-check certificates (JSON lines)");
  verify->add_option("--cert", cert_file)->required();
  verify->add_option("--budget", budget);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*list) return cmd_list(out);
    if (*verify) return cmd_verify(cert_file, budget, out);
    if (*measure) return cmd_measure(group, mode, radius, budget, dir, raw, out);
    const auto ctx = make_group(group);
    if (*witness) {
      const auto c = conjugacy_witness(ctx, ctx.parse_element(gamma), ctx.parse_element(eta), budget);
      out << certificate_to_json(ctx, c) << '\n';
      return c.verified ? 0 : 2;
    }
    const auto c = rf_witness(ctx, ctx.parse_element(gamma), budget);
    out << certificate_to_json(ctx, c) << '\n';
    return c.verified ? 0 : 2;
  } catch (const ContractViolation& e) {
    err << "nilsep: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "nilsep: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace nilsep
