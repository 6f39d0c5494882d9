// Copyright 2026 The km2d Authors
// SPDX-License-Identifier: Apache-2.0

#include "km2d/cli.hpp"

#include "km2d/errors.hpp"
#include "km2d/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

namespace km2d {

namespace {

struct RunConfig {
  std::string command;
  std::string rep = "so3-adjoint";
  bool rep_given = false;
  std::optional<int> d;
  std::string sectors;
  std::string geometry = "torus";
  std::string cutoff_m, cutoff_p, cutoff_l;
  std::optional<int> lmax;
  int l_probe = 2;
  std::string window = "1,1,2";
  std::optional<double> tol;
  std::string method = "analytic";
  int max_mode = 2;
  int max_particles = 2;
  std::string output;
  std::string format;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

bool has_flag(const std::vector<std::string>& args, const std::string& flag) {
  return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
    return a == flag || a.rfind(flag + "=", 0) == 0;
  });
}

// Removes --config from the arguments and appends the file's key=value
// entries that are not already given on the command line.
std::vector<std::string> merge_config(std::vector<std::string> args) {
  std::string path;
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw InvalidArgument("--config needs a file argument");
      path = args[i + 1];
      args.erase(args.begin() + i, args.begin() + i + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + i);
      break;
    }
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read config file " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InvalidArgument(path + ":" + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    while (!key.empty() && key[0] == '-') key.erase(0, 1);
    if (key == "command") {
      if (args.empty() || args[0].rfind("-", 0) == 0) args.insert(args.begin(), value);
      continue;
    }
    if (has_flag(args, "--" + key)) continue;
    args.push_back("--" + key);
    args.push_back(value);
  }
  return args;
}

Boundary parse_boundary(const std::string& s) {
  if (s == "NS" || s == "ns") return Boundary::NS;
  if (s == "R" || s == "r") return Boundary::R;
  throw InvalidArgument("sector must be NS or R, got '" + s + "'");
}

HalfInt default_cut(Boundary b) {
  return b == Boundary::R ? HalfInt::from_int(4) : HalfInt::from_twice(9);
}

HalfInt cut_or_default(const std::string& text, Boundary b) {
  return text.empty() ? default_cut(b) : HalfInt::parse(text);
}

LieAlgebraRep resolve_rep(const RunConfig& rc) {
  if (rc.d && !rc.rep_given) return RepRegistry::instance().build("free" + std::to_string(*rc.d));
  LieAlgebraRep rep = RepRegistry::instance().build(rc.rep);
  if (rc.d && *rc.d != rep.d)
    throw InvalidArgument("--d " + std::to_string(*rc.d) + " conflicts with --rep " + rc.rep +
                          " (d = " + std::to_string(rep.d) + ")");
  return rep;
}

SectorConfig torus_config(const RunConfig& rc, int d) {
  const std::string sec = rc.sectors.empty() ? "NS,NS" : rc.sectors;
  const auto comma = sec.find(',');
  if (comma == std::string::npos) throw InvalidArgument("torus --sectors takes 'z,angular', e.g. NS,R");
  const Boundary z = parse_boundary(sec.substr(0, comma));
  const Boundary a = parse_boundary(sec.substr(comma + 1));
  SectorConfig cfg =
      SectorConfig::torus(z, a, d, cut_or_default(rc.cutoff_m, z), cut_or_default(rc.cutoff_p, a));
  cfg.validate();
  return cfg;
}

SectorConfig sphere_config(const RunConfig& rc, int d) {
  const Boundary s = parse_boundary(rc.sectors.empty() ? "R" : rc.sectors);
  SectorConfig cfg = SectorConfig::sphere(s, d, cut_or_default(rc.cutoff_l, s));
  cfg.validate();
  return cfg;
}

std::string output_format(const RunConfig& rc, const std::string& fallback) {
  if (!rc.format.empty()) return rc.format;
  if (rc.output.size() >= 4 && rc.output.compare(rc.output.size() - 4, 4, ".csv") == 0) return "csv";
  return fallback;
}

template <class Report>
void emit(const RunConfig& rc, const Report& report, std::ostream& out) {
  if (rc.output.empty()) return;
  std::ostringstream body;
  if (output_format(rc, "json") == "csv")
    write_csv(body, report);
  else
    body << to_json(report).dump(2) << '\n';
  if (rc.output == "-") {
    out << body.str();
    return;
  }
  std::ofstream f(rc.output, std::ios::binary);
  if (!f) throw InvalidArgument("cannot write " + rc.output);
  f << body.str();
}

std::string num(double v) {
  std::ostringstream s;
  s << std::setprecision(12) << v;
  return s.str();
}

int summarize(const CommutatorReport& r, std::ostream& out) {
  const SectorConfig& c = r.cfg;
  out << r.task << "  " << to_string(c.geometry) << ' '
      << (c.geometry == Geometry::Torus ? to_string(c.z_sector) + "," + to_string(c.angular_sector)
                                        : to_string(c.z_sector))
      << "  d=" << c.d << "  rep=" << r.rep << "  window=" << r.window.str()
      << "  method=" << to_string(r.method) << '\n';
  const auto failing = std::count_if(r.brackets.begin(), r.brackets.end(),
                                     [](const BracketResult& b) { return !b.pass; });
  out << "brackets " << r.brackets.size() << "  failing " << failing << "  max residual "
      << num(r.max_residual) << "  tol " << num(r.tol) << '\n';
  int shown = 0;
  for (const BracketResult& b : r.brackets)
    if (!b.pass && shown++ < 5)
      out << "  FAIL " << b.lhs << " = " << b.rhs << "  residual " << num(b.residual)
          << "  central " << num(b.central_measured) << " vs " << num(b.central_expected) << '\n';
  if (r.has_charges)
    out << "c = " << num(r.charges.c_measured) << " (expected " << num(r.charges.c_expected)
        << ")  k = " << num(r.charges.k_measured) << " (expected " << num(r.charges.k_expected)
        << ")\n";
  if (!r.lt_samples.empty())
    out << "[L,T] coefficient: " << (r.lt_matches_minus_n ? "-n" : "not -n")
        << (r.lt_matches_printed_minus_p ? "  (equals -p too)" : "  (differs from -p)") << '\n';
  out << (r.pass ? "PASS" : "FAIL") << '\n';
  return r.pass ? kExitPass : kExitCheckFailed;
}

int run_verify_torus(const RunConfig& rc, std::ostream& out) {
  const LieAlgebraRep rep = resolve_rep(rc);
  FockSpace space(torus_config(rc, rep.d));
  VerifyOptions opt;
  opt.window = Window::parse(rc.window);
  opt.tol = rc.tol.value_or(1e-9);
  opt.method = parse_central_method(rc.method);
  opt.max_mode = rc.max_mode;
  CommutatorReport r = check_torus_algebra(space, rep, opt);
  r.rep = rc.rep_given || !rc.d ? rc.rep : rep.name;
  emit(rc, r, out);
  return summarize(r, out);
}

int run_verify_sphere(const RunConfig& rc, std::ostream& out) {
  const LieAlgebraRep rep = resolve_rep(rc);
  FockSpace space(sphere_config(rc, rep.d));
  const int l_cut_ceil = (space.config().l_cut.twice() + 1) / 2;
  const StructureTable table = StructureTable::build(rc.lmax.value_or(2 * l_cut_ceil));
  VerifyOptions opt;
  opt.window = Window::parse(rc.window);
  opt.tol = rc.tol.value_or(1e-9);
  opt.method = parse_central_method(rc.method);
  opt.max_mode = rc.max_mode;
  CommutatorReport r = check_sphere_realization(space, rep, table, opt);
  r.rep = rc.rep_given || !rc.d ? rc.rep : rep.name;
  emit(rc, r, out);
  return summarize(r, out);
}

int run_sphere_abstract(const RunConfig& rc, std::ostream& out) {
  const LieAlgebraRep rep = resolve_rep(rc);
  const StructureTable table = StructureTable::build(rc.lmax.value_or(8));
  const JacobiReport r = check_sphere_abstract(table, rep, rc.l_probe, rc.tol.value_or(1e-10));
  emit(rc, r, out);
  out << "sphere-abstract  rep=" << rep.name << "  lmax=" << r.table_l_max
      << "  l<=" << r.l_probe << "  triples " << r.triples << '\n';
  for (const auto& [fam, v] : r.max_by_family) out << "  " << fam << "  " << num(v) << '\n';
  out << "max Jacobi residual " << num(r.max_residual) << "  tol " << num(r.tol) << '\n'
      << (r.pass ? "PASS" : "FAIL") << '\n';
  return r.pass ? kExitPass : kExitCheckFailed;
}

int run_structure_constants(const RunConfig& rc, std::ostream& out) {
  if (!rc.format.empty() && rc.format != "csv")
    throw InvalidArgument("structure-constants writes CSV only");
  const StructureTable table = StructureTable::build(rc.lmax.value_or(4));
  if (rc.output.empty() || rc.output == "-") {
    table.write_csv(out);
    return kExitPass;
  }
  std::ofstream f(rc.output, std::ios::binary);
  if (!f) throw InvalidArgument("cannot write " + rc.output);
  table.write_csv(f);
  out << "wrote structure table lmax=" << table.l_max() << " to " << rc.output << '\n';
  return kExitPass;
}

int run_regularization(const RunConfig& rc, std::ostream& out) {
  const auto rows = regularization_table();
  emit(rc, rows, out);
  out << std::left << std::setw(22) << "descriptor" << std::setw(20) << "pole" << std::setw(20)
      << "finite part" << "delta_reg(0)\n";
  for (const auto& r : rows) {
    out << std::setw(22) << r.descriptor;
    if (r.status == "ok")
      out << std::setw(20) << num(r.pole) << std::setw(20) << num(r.finite) << num(r.delta_reg);
    else
      out << "unresolved";
    out << '\n';
  }
  return kExitPass;
}

int run_car_check(const RunConfig& rc, std::ostream& out) {
  const int d = rc.d.value_or(RepRegistry::instance().build(rc.rep).d);
  SectorConfig cfg;
  if (rc.geometry == "torus") {
    RunConfig small = rc;
    if (small.cutoff_m.empty()) small.cutoff_m = rc.sectors.rfind("R", 0) == 0 ? "2" : "3/2";
    if (small.cutoff_p.empty())
      small.cutoff_p = rc.sectors.size() > 2 && rc.sectors.substr(rc.sectors.find(',') + 1) == "R"
                           ? "2"
                           : "3/2";
    cfg = torus_config(small, d);
  } else if (rc.geometry == "sphere") {
    RunConfig small = rc;
    if (small.cutoff_l.empty()) small.cutoff_l = rc.sectors == "NS" ? "3/2" : "2";
    cfg = sphere_config(small, d);
  } else {
    throw InvalidArgument("--geometry must be torus or sphere");
  }
  FockSpace space(cfg);
  std::vector<std::pair<ModeLabel, ModeLabel>> pairs;
  for (const auto& x : space.modes())
    for (const auto& y : space.modes()) pairs.emplace_back(x, y);
  const auto basis =
      space.enumerate({}, std::min(rc.max_particles, space.num_slots()), HalfInt::from_int(1000));
  const double res = check_car(space, pairs, basis);
  const double tol = rc.tol.value_or(1e-14);
  out << "car-check  " << to_string(cfg.geometry) << "  modes " << space.modes().size()
      << "  states " << basis.size() << "  spinor dim " << space.spinor_dim()
      << "  max residual " << num(res) << '\n'
      << (res <= tol ? "PASS" : "FAIL") << '\n';
  return res <= tol ? kExitPass : kExitCheckFailed;
}

}  // namespace

int parse_and_dispatch(const std::vector<std::string>& raw, std::ostream& out, std::ostream& err) {
  RunConfig rc;
  CLI::App app{"Kac-Moody and Virasoro current algebra verifier for 2D free fermions", "km2d"};
  app.require_subcommand(1);

  struct Cmd {
    const char* name;
    const char* help;
  };
  const Cmd cmds[] = {
      {"verify-torus", "verify the torus current algebra and its central charges"},
      {"verify-sphere", "verify the sphere current algebra realization"},
      {"sphere-abstract", "Jacobi identity of the abstract sphere algebra"},
      {"structure-constants", "export the sphere structure table as CSV"},
      {"regularization", "regularized zero-point sums per sector"},
      {"car-check", "anticommutation relations on a truncated Fock space"},
  };
  for (const Cmd& c : cmds) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->callback([&rc, name = std::string(c.name)] { rc.command = name; });
    sub->add_option("--rep", rc.rep, "algebra: so3-adjoint, so<n>-adjoint, so<n>-vector, free<d>");
    sub->add_option("--d", rc.d, "number of fermion flavours (alone: free fermions)");
    sub->add_option("--sectors", rc.sectors, "torus 'z,angular' (NS,NS) or sphere NS|R");
    sub->add_option("--geometry", rc.geometry, "torus|sphere (car-check)");
    sub->add_option("--cutoff-m", rc.cutoff_m, "torus z-mode cutoff, e.g. 9/2");
    sub->add_option("--cutoff-p", rc.cutoff_p, "torus angular cutoff");
    sub->add_option("--cutoff-l", rc.cutoff_l, "sphere angular cutoff");
    sub->add_option("--lmax", rc.lmax, "structure table degree");
    sub->add_option("--lprobe", rc.l_probe, "sphere-abstract: generators with l <= lprobe");
    sub->add_option("--window", rc.window, "probe window Wz,Wa,N");
    sub->add_option("--tol", rc.tol, "pass tolerance");
    sub->add_option("--method", rc.method, "central pipeline: analytic|eps|raw");
    sub->add_option("--max-mode", rc.max_mode, "largest |mode| (torus) or l (sphere) checked");
    sub->add_option("--max-particles", rc.max_particles, "car-check basis particle limit");
    sub->add_option("--output", rc.output, "report file ('-' for stdout)");
    sub->add_option("--format", rc.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--config", "key=value file merged under explicit flags");
  }

  std::vector<std::string> args;
  try {
    args = merge_config(raw);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  rc.rep_given = has_flag(args, "--rep");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    if (app.get_subcommands().empty()) err << app.help();
    return kExitUsage;
  }

  try {
    if (rc.command == "verify-torus") return run_verify_torus(rc, out);
    if (rc.command == "verify-sphere") return run_verify_sphere(rc, out);
    if (rc.command == "sphere-abstract") return run_sphere_abstract(rc, out);
    if (rc.command == "structure-constants") return run_structure_constants(rc, out);
    if (rc.command == "regularization") return run_regularization(rc, out);
    if (rc.command == "car-check") return run_car_check(rc, out);
  } catch (const UnresolvedPrescription& e) {
    err << "unresolved: " << e.what() << '\n';
    return kExitUnresolved;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

int parse_and_dispatch(int argc, char** argv) {
  return parse_and_dispatch(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}

}  // namespace km2d
