// afflab: generators, invariant suites, expression evaluation and
// decomposition from the command line.
//
// Exit status: 0 success, 1 a suite failed (or a computation failed),
// 2 usage, parse or input errors.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "afflab/afflab.hpp"
#include "afflab/lab/expr.hpp"
#include "afflab/lab/generators.hpp"
#include "afflab/lab/io.hpp"
#include "afflab/lab/suites.hpp"

using namespace afflab;

namespace {

constexpr int kFail = 1;
constexpr int kUsage = 2;

bool is_input_error(ErrorKind k) {
  switch (k) {
    case ErrorKind::ParseError:
    case ErrorKind::UnboundIdentifier:
    case ErrorKind::MalformedInput:
    case ErrorKind::InvalidProfile:
    case ErrorKind::InvalidArgument:
    case ErrorKind::ShapeMismatch:
    case ErrorKind::MissingOperand:
      return true;
    default:
      return false;
  }
}

void emit(const io::Json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << io::dump(j);
  } else {
    io::write_file(path, j);
  }
}

struct GenArgs {
  std::optional<std::uint64_t> seed;
  std::string profile;
  std::string shape;
  std::string out;
  std::size_t horizon = 64;
};

int run_gen(const GenArgs& a) {
  lab::GeneratorProfile p;
  if (!a.profile.empty()) p = io::profile_from_json(io::read_file(a.profile));
  if (a.seed) p.seed = *a.seed;
  p.validate();
  io::Document doc;
  doc.shape = a.shape.empty() ? lab::gen_algebra(p) : io::document_from_json(io::read_file(a.shape)).shape;
  switch (p.op.kind) {
    case lab::OperatorKind::chain: doc.chain = lab::gen_chain(doc.shape, p); break;
    case lab::OperatorKind::central: doc.central = lab::gen_central(doc.shape, p); break;
    default: doc.op = lab::gen_operator(doc.shape, p); break;
  }
  emit(io::document_to_json(doc, a.horizon), a.out);
  return 0;
}

struct CheckArgs {
  std::vector<std::string> suites;
  std::size_t horizon = 64;
  double tol = 1e-9;
  double psd_tol = 1e-8;
  std::size_t samples = 200;
  std::uint64_t seed = 7;
  unsigned threads = 0;
  double trace_fault = 0.0;
  std::string report;
  bool quiet = false;
};

int run_check(const CheckArgs& a) {
  lab::SuiteConfig c;
  if (!a.suites.empty()) c.suites = a.suites;
  c.cfg = {a.horizon, a.tol, a.psd_tol};
  c.sample_count = a.samples;
  c.seed = a.seed;
  c.threads = a.threads;
  c.trace_perturbation = a.trace_fault;
  const auto start = std::chrono::steady_clock::now();
  const auto report = lab::run_suite(c);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!a.quiet) {
    for (const auto& s : report.suites) {
      std::printf("%-15s %s  cases=%zu  max_residual=%.3e  tol=%.1e", s.name.c_str(), s.pass ? "PASS" : "FAIL", s.cases,
                  s.max_residual, s.tolerance);
      if (!s.pass) {
        std::printf("  worst_seed=%llu  worst_block=%zu  errors=%zu  failures=%zu",
                    static_cast<unsigned long long>(s.worst_seed), s.worst_block, s.errors, s.failures);
      }
      std::printf("\n");
      if (!s.first_error.empty()) std::printf("  first error: %s\n", s.first_error.c_str());
    }
    std::printf("%s in %.1f s\n", report.pass() ? "all suites passed" : "suite failures", secs);
  }
  if (!a.report.empty()) emit(lab::report_to_json(report), a.report);
  return report.pass() ? 0 : kFail;
}

struct EvalArgs {
  std::string expr;
  std::vector<std::string> binds;
  std::string out;
  std::size_t horizon = 64;
};

int run_eval(const EvalArgs& a) {
  const auto tree = lab::parse_expr(a.expr);
  lab::Bindings bindings;
  for (const auto& b : a.binds) {
    const auto eq = b.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw Error(ErrorKind::InvalidArgument, "--bind expects NAME=FILE, got '" + b + "'");
    }
    const auto doc = io::document_from_json(io::read_file(b.substr(eq + 1)));
    const std::string name = b.substr(0, eq);
    if (doc.op) {
      bindings.insert_or_assign(name, *doc.op);
    } else if (doc.central) {
      bindings.insert_or_assign(name, *doc.central);
    } else {
      throw Error(ErrorKind::MalformedInput, b.substr(eq + 1) + ": no operator or central element");
    }
  }
  const auto value = lab::eval_expr(tree, bindings);
  io::Json out;
  if (const auto* c = std::get_if<Complex>(&value)) {
    out = {{"value", io::complex_to_json(*c)}};
  } else {
    io::Document doc;
    if (const auto* op = std::get_if<AffiliatedOperator>(&value)) {
      doc.shape = op->shape_ptr();
      doc.op = *op;
    } else {
      const auto& z = std::get<CentralElement>(value);
      doc.shape = z.shape_ptr();
      doc.central = z;
    }
    out = io::document_to_json(doc, a.horizon);
  }
  emit(out, a.out);
  return 0;
}

struct DecomposeArgs {
  std::string input;
  std::string coeffs = "natural";
  std::string out;
  std::size_t horizon = 64;
};

int run_decompose(const DecomposeArgs& a) {
  if (a.coeffs != "natural") throw Error(ErrorKind::InvalidArgument, "unsupported coefficient set '" + a.coeffs + "'");
  const auto doc = io::document_from_json(io::read_file(a.input));
  if (!doc.op) throw Error(ErrorKind::MalformedInput, a.input + ": no operator");
  ToleranceConfig cfg;
  cfg.horizon = a.horizon;
  const auto rep = affiliated_decompose(*doc.op, Coefficients::natural(), cfg);
  auto out = io::representation_to_json(rep, a.horizon);
  out["shape"] = io::shape_to_json(*doc.shape);
  emit(out, a.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"afflab: finite-block models of affiliated operator algebras"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "generate a seeded shape with an operator, central element or chain");
  g->add_option("--seed", gen.seed, "seed (overrides the profile)");
  g->add_option("--profile", gen.profile, "generator profile JSON")->check(CLI::ExistingFile);
  g->add_option("--shape", gen.shape, "reuse the algebra of this document")->check(CLI::ExistingFile);
  g->add_option("-o,--output", gen.out, "output file (default stdout)");
  g->add_option("--horizon", gen.horizon, "blocks written explicitly for tailless infinite data");

  CheckArgs check;
  auto* c = app.add_subcommand("check", "run invariant suites");
  c->add_option("--suite", check.suites, "suite names (default: all)")->check(CLI::IsMember(lab::all_suites()));
  c->add_option("--horizon", check.horizon, "blocks checked")->check(CLI::PositiveNumber);
  c->add_option("--tol", check.tol, "equality tolerance")->check(CLI::PositiveNumber);
  c->add_option("--psd-tol", check.psd_tol, "positivity tolerance")->check(CLI::PositiveNumber);
  c->add_option("--samples", check.samples, "cases per suite")->check(CLI::PositiveNumber);
  c->add_option("--seed", check.seed, "base seed");
  c->add_option("--threads", check.threads, "worker threads (default AFFLAB_THREADS or all cores)");
  c->add_option("--inject-trace-fault", check.trace_fault, "add a constant to the trace (fault injection)");
  c->add_option("--report", check.report, "write the JSON report here");
  c->add_flag("-q,--quiet", check.quiet, "no per-suite summary");

  EvalArgs eval;
  auto* e = app.add_subcommand("eval", "evaluate an operator expression");
  e->add_option("expr", eval.expr, "expression, e.g. \"tr(X*Y - Y*X)\"")->required();
  e->add_option("--bind", eval.binds, "NAME=FILE binding (repeatable)");
  e->add_option("-o,--output", eval.out, "output file (default stdout)");
  e->add_option("--horizon", eval.horizon, "blocks written explicitly for tailless infinite data");

  DecomposeArgs dec;
  auto* d = app.add_subcommand("decompose", "write the decomposition T = sum c_l S Z_l");
  d->add_option("--input", dec.input, "operator document")->required()->check(CLI::ExistingFile);
  d->add_option("--coeffs", dec.coeffs, "coefficient set")->check(CLI::IsMember({"natural"}));
  d->add_option("-o,--output", dec.out, "output file (default stdout)");
  d->add_option("--horizon", dec.horizon, "blocks computed eagerly");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*g) return run_gen(gen);
    if (*c) return run_check(check);
    if (*e) return run_eval(eval);
    if (*d) return run_decompose(dec);
  } catch (const Error& err) {
    std::cerr << "afflab: " << err.what() << "\n";
    return is_input_error(err.kind()) ? kUsage : kFail;
  } catch (const std::exception& err) {
    std::cerr << "afflab: " << err.what() << "\n";
    return kFail;
  }
  return kUsage;
}
