#pragma once

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "resing/binomial.hpp"
#include "resing/coefficient_ideal.hpp"
#include "resing/curve.hpp"
#include "resing/export.hpp"
#include "resing/parse.hpp"
#include "resing/toric.hpp"
#include "resing/verify.hpp"

namespace resing::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kBudget = 3,
  kInvariant = 4,
};

struct RunConfig {
  std::string mode = "binomial";
  std::uint64_t characteristic = 0;
  std::string input = "-";
  std::string output;  // empty: standard output
  std::string format = "json";
  std::size_t max_steps = 10000;
  std::string transform = "strict";
  bool embedded = false;
  std::string main_var;  // coeff-check only; default is the last variable
};

/// Generators and ring read from polynomial input: an optional line
/// "vars: a, b, c" fixes the variable order, every other non-comment line
/// holds one or more generators separated by ','.
struct PolynomialInput {
  RingPtr ring;
  std::vector<Polynomial> generators;
};

inline PolynomialInput read_polynomials(const std::string& text, FieldSpec field) {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::size_t>> pieces;
  std::size_t offset = 0;
  while (offset <= text.size()) {
    std::size_t end = text.find('\n', offset);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(offset, end - offset);
    const std::size_t line_start = offset;
    offset = end + 1;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (line.compare(first, 5, "vars:") == 0) {
      if (!names.empty()) throw ParseError("duplicate vars line", line_start);
      std::stringstream ss(line.substr(first + 5));
      std::string name;
      while (std::getline(ss, name, ',')) {
        auto b = name.find_first_not_of(" \t\r"), e = name.find_last_not_of(" \t\r");
        if (b == std::string::npos) throw ParseError("empty variable name", line_start);
        names.push_back(name.substr(b, e - b + 1));
      }
      continue;
    }
    std::size_t pos = 0;
    while (pos <= line.size()) {
      std::size_t comma = line.find(',', pos);
      if (comma == std::string::npos) comma = line.size();
      std::string piece = line.substr(pos, comma - pos);
      if (piece.find_first_not_of(" \t\r") == std::string::npos) throw ParseError("empty generator", line_start + pos);
      pieces.emplace_back(piece, line_start + pos);
      pos = comma + 1;
    }
  }
  if (pieces.empty()) throw ParseError("no polynomial in input", 0);
  if (names.empty()) {
    std::vector<std::string> texts;
    for (const auto& p : pieces) texts.push_back(p.first);
    names = infer_variables(texts);
    if (names.empty()) throw ParseError("input mentions no variable; add a 'vars:' line", 0);
  }
  PolynomialInput in;
  try {
    in.ring = make_ring(names, field);
  } catch (const DomainError& e) {
    throw ParseError(e.what(), 0);
  }
  for (const auto& [piece, start] : pieces) {
    try {
      in.generators.push_back(parse_polynomial(piece, in.ring));
    } catch (const UnknownVariableError& e) {
      throw UnknownVariableError(e.name(), start + e.position());
    } catch (const ParseError& e) {
      throw ParseError(std::string(e.what()) + " in generator '" + piece + "'", start + e.position());
    }
  }
  return in;
}

namespace detail {

inline nlohmann::json fan_to_json(const ToricResolution& res) {
  using nlohmann::json;
  auto ray_json = [](const LatticeVector& v) {
    json r = json::array();
    for (const auto& x : v.entries()) r.push_back(x.str());
    return r;
  };
  auto mults = [](const std::vector<Integer>& m) {
    json r = json::array();
    for (const auto& x : m) r.push_back(x.str());
    return r;
  };
  json cones = json::array();
  for (const auto& c : res.fan.cones()) {
    json rays = json::array();
    for (const auto& r : c.rays()) rays.push_back(ray_json(r));
    cones.push_back({{"rays", rays}, {"multiplicity", c.multiplicity().str()}});
  }
  json history = json::array();
  for (const auto& s : res.history.steps)
    history.push_back({{"ray", ray_json(s.ray)}, {"before", mults(s.multiplicities_before)}, {"after", mults(s.multiplicities_after)}});
  return {{"format", "resing-fan"}, {"version", 1}, {"cones", cones}, {"subdivisions", history}};
}

inline std::string fan_text(const ToricResolution& res) {
  std::string out = format_fan(res.fan);
  for (const auto& s : res.history.steps) out += "# inserted ray " + s.ray.to_string() + "\n";
  return out;
}

inline std::string elapsed_since(std::chrono::steady_clock::time_point start) {
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << s << "s";
  return os.str();
}

inline std::string read_input(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read input file '" + path + "'");
  ss << in.rdbuf();
  return ss.str();
}

inline void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DomainError("cannot write output file '" + path + "'");
  f << text;
}

inline std::string tree_summary(const ChartTree& tree) {
  return "charts: " + std::to_string(tree.size()) + "  final charts: " + std::to_string(tree.finals().size()) +
         "  blow-ups: " + std::to_string(tree.blowup_count());
}

}  // namespace detail

/// Runs one configured job on `input`; artifacts go to config.output or `out`,
/// the summary line to `out`, diagnostics to `err`. Returns the exit code.
inline int execute(const RunConfig& config, const std::string& input, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  const bool to_stdout = config.output.empty() || config.output == "-";
  std::ostringstream summary;
  auto emit_tree = [&](const ChartTree& tree) {
    const auto table = collect_divisors(tree);
    detail::write_output(config.output, export_tree(tree, table, config.format), out);
  };
  FieldSpec field;
  try {
    field = FieldSpec(config.characteristic);
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }
  try {
    TransformKind transform = config.transform == "weak" ? TransformKind::weak : TransformKind::strict;
    export_format_from_string(config.format);
    if (config.mode == "binomial") {
      auto in = read_polynomials(input, FieldSpec{});
      BinomialOptions options{config.max_steps, transform};
      try {
        ChartTree tree = resolve_binomial(in.generators, field, options);
        emit_tree(tree);
        summary << detail::tree_summary(tree);
      } catch (const BudgetExceeded& e) {
        emit_tree(e.partial());
        err << "error: " << e.what() << "; partial tree written\n";
        out << detail::tree_summary(e.partial()) << "  (incomplete)\n";
        return kBudget;
      }
    } else if (config.mode == "curve") {
      if (!field.is_rational()) throw DomainError("curve mode works in characteristic 0 only");
      auto in = read_polynomials(input, field);
      if (in.generators.size() != 1) throw ParseError("curve mode expects exactly one polynomial", 0);
      if (in.ring->size() != 2)
        throw ParseError("curve mode needs exactly two variables (found " + std::to_string(in.ring->size()) +
                             "); use a 'vars:' line",
                         0);
      CurveOptions options{config.max_steps, config.embedded, transform};
      try {
        ChartTree tree = resolve_plane_curve(PlaneCurve(in.generators.front()), options);
        emit_tree(tree);
        summary << detail::tree_summary(tree);
      } catch (const BudgetExceeded& e) {
        emit_tree(e.partial());
        err << "error: " << e.what() << "; partial tree written\n";
        out << detail::tree_summary(e.partial()) << "  (incomplete)\n";
        return kBudget;
      }
    } else if (config.mode == "toric") {
      if (config.format == "dot") throw ParseError("dot output is only available for chart trees", 0);
      Fan fan = parse_fan(input);
      auto write = [&](const ToricResolution& r) {
        detail::write_output(config.output, config.format == "json" ? detail::fan_to_json(r).dump(2) + "\n" : detail::fan_text(r),
                             out);
      };
      try {
        ToricResolution res = resolve_fan(fan, ToricOptions{config.max_steps});
        write(res);
        summary << "cones: " << res.fan.size() << "  subdivisions: " << res.history.steps.size();
      } catch (const ToricBudgetExceeded& e) {
        write(e.partial());
        err << "error: " << e.what() << "; partial fan written\n";
        out << "cones: " << e.partial().fan.size() << "  subdivisions: " << e.partial().history.steps.size()
            << "  (incomplete)\n";
        return kBudget;
      }
    } else if (config.mode == "coeff-check") {
      auto in = read_polynomials(input, field);
      if (in.generators.size() != 1) throw ParseError("coeff-check expects exactly one polynomial", 0);
      std::size_t z = in.ring->size() - 1;
      if (!config.main_var.empty()) {
        auto idx = in.ring->index_of(config.main_var);
        if (!idx) throw UnknownVariableError(config.main_var, 0);
        z = *idx;
      }
      const Polynomial& f = in.generators.front();
      const auto data = coefficient_ideal(f, z);
      const bool holds = check_order_equivalence(f, z);
      std::ostringstream report;
      const auto ord = f.order_at_origin();
      if (config.format == "json") {
        nlohmann::json j;
        j["polynomial"] = f.to_string();
        j["main_variable"] = in.ring->name(z);
        j["k"] = data.k;
        j["k_factorial"] = data.k_factorial;
        j["order"] = ord.is_infinite() ? nlohmann::json("inf") : nlohmann::json(ord.value());
        nlohmann::json coeffs = nlohmann::json::array(), powered = nlohmann::json::array();
        for (const auto& a : data.coefficients) coeffs.push_back(a.to_string());
        for (const auto& a : data.powered_coefficients) powered.push_back(a.to_string());
        j["coefficients"] = coeffs;
        j["coefficient_ideal"] = powered;
        j["equivalence_holds"] = holds;
        report << j.dump(2) << "\n";
      } else {
        report << "polynomial: " << f << "\nmain variable: " << in.ring->name(z) << "\nk: " << data.k
               << "\nk!: " << data.k_factorial << "\norder at origin: "
               << (ord.is_infinite() ? std::string("inf") : std::to_string(ord.value())) << "\n";
        for (std::size_t i = 0; i < data.powered_coefficients.size(); ++i)
          report << "a_" << i + 1 << "^" << data.k_factorial / (i + 1) << " = " << data.powered_coefficients[i] << "\n";
        report << "equivalence: " << (holds ? "holds" : "FAILS") << "\n";
      }
      detail::write_output(config.output, report.str(), out);
      summary << "equivalence: " << (holds ? "holds" : "fails");
      if (!holds) {
        out << summary.str() << "\n";
        err << "error: order equivalence failed\n";
        return kInvariant;
      }
    } else {
      throw ParseError("unknown mode '" + config.mode + "'", 0);
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << "\n";
    return kInvariant;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  if (to_stdout && config.format != "text") out << "\n";
  out << summary.str() << "  elapsed: " << detail::elapsed_since(start) << "\n";
  return kOk;
}

inline int verify_file(const std::string& path, std::ostream& out, std::ostream& err) {
  try {
    const ChartTree tree = import_json(detail::read_input(path));
    const VerifyReport report = verify_tree(tree);
    for (const auto& f : report.failures) err << "FAIL " << f << "\n";
    out << "charts: " << report.charts << "  points checked: " << report.points_checked
        << "  on variety: " << report.points_on_variety << "  failures: " << report.failures.size() << "\n";
    return report.ok() ? kOk : kInvariant;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

inline int main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"resing: resolution of singularities by explicit blow-ups"};
  app.set_version_flag("--version", "resing 1.0.0");
  RunConfig config;
  app.add_option("--mode", config.mode, "binomial | toric | curve | coeff-check")
      ->check(CLI::IsMember({"binomial", "toric", "curve", "coeff-check"}));
  app.add_option("--char", config.characteristic, "0 or a prime")->capture_default_str();
  app.add_option("--in", config.input, "input file, '-' for standard input")->capture_default_str();
  app.add_option("--out", config.output, "output file (default: standard output)");
  app.add_option("--format", config.format, "dot | json | text")->check(CLI::IsMember({"dot", "json", "text"}))->capture_default_str();
  app.add_option("--max-steps", config.max_steps, "blow-up / subdivision budget")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--transform", config.transform, "strict | weak")->check(CLI::IsMember({"strict", "weak"}))->capture_default_str();
  app.add_flag("--embedded", config.embedded, "curve mode: also separate the curve from the exceptional divisors");
  app.add_option("--main-var", config.main_var, "coeff-check: the variable the polynomial is monic in");

  std::string tree_path;
  auto* verify = app.add_subcommand("verify", "re-check a stored JSON chart tree");
  verify->add_option("tree", tree_path, "tree file written with --format json")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion& e) {
    out << e.what() << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kUsage;
  }
  if (*verify) return verify_file(tree_path, out, err);
  if (config.embedded && config.mode != "curve") {
    err << "usage error: --embedded applies to curve mode only\n";
    return kUsage;
  }
  if (!config.main_var.empty() && config.mode != "coeff-check") {
    err << "usage error: --main-var applies to coeff-check mode only\n";
    return kUsage;
  }
  std::string input;
  try {
    input = detail::read_input(config.input);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return execute(config, input, out, err);
}

}  // namespace resing::cli
