#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "steinhaus/engine.hpp"
#include "steinhaus/errors.hpp"
#include "steinhaus/json_io.hpp"
#include "steinhaus/parse.hpp"
#include "steinhaus/product.hpp"
#include "steinhaus/report.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitKernel = 3;

void emit_error(const char* kind, const std::string& message) {
  std::cerr << "{\"error\": \"" << kind << "\", \"message\": \"" << message
            << "\"}\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw steinhaus::Error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::optional<std::string>& path,
                  const std::string& content) {
  if (!path) {
    std::cout << content;
    return;
  }
  std::ofstream out(*path, std::ios::binary);
  if (!out) throw steinhaus::Error("cannot write " + *path);
  out << content;
}

unsigned effective_precision_cap(const std::optional<unsigned>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("STEINHAUS_PRECISION_CAP")) {
    return static_cast<unsigned>(std::strtoul(env, nullptr, 10));
  }
  return steinhaus::kDefaultPrecisionCap;
}

struct CommonOptions {
  std::string epsilon = "1/20";
  std::string interval = "[0,1)";
  unsigned steps = 50;
  std::optional<unsigned> precision_cap;
  std::size_t points = 50;
  std::size_t basis_prefix = 30;
  std::optional<std::string> out;
  std::string format = "json";
};

int run_basis(const CommonOptions& opt) {
  using namespace steinhaus;
  BasisSpec basis = new_basis(parse_rational(opt.epsilon), ThetaDescriptor{},
                              effective_precision_cap(opt.precision_cap));
  extend_basis(basis, opt.basis_prefix);
  const BasisReport report = verify_basis_properties(basis, opt.basis_prefix);
  write_output(opt.out, basis_to_json(basis));
  if (!report.pass) {
    emit_error("BasisPropertyFailure", report.failure + " at index " +
                                           std::to_string(report.failure_index));
    return kExitVerifyFailure;
  }
  return kExitPass;
}

int run_decompose(const CommonOptions& opt) {
  using namespace steinhaus;
  const Rational epsilon = parse_rational(opt.epsilon);
  BasisSpec basis = new_basis(epsilon, ThetaDescriptor{},
                              effective_precision_cap(opt.precision_cap));
  const RealInterval interval = parse_interval(opt.interval, basis);
  const Decomposition result = decompose(interval, epsilon, opt.steps, basis);
  if (opt.format == "json") {
    write_output(opt.out, decomposition_to_json(result));
  } else if (opt.format == "csv") {
    write_output(opt.out, decomposition_to_csv(result));
  } else if (opt.format == "svg") {
    write_output(opt.out, decomposition_to_svg(result, opt.basis_prefix));
  } else {
    throw ParseError("unknown format " + opt.format, 0);
  }
  return kExitPass;
}

int run_verify(const std::string& path, const CommonOptions& opt) {
  using namespace steinhaus;
  const std::string text = read_file(path);
  VerifyReport report;
  if (text.find("\"axes\"") != std::string::npos) {
    std::optional<RationalMatrix> map;
    const ProductDecomposition product = product_from_json(text, &map);
    report = map ? verify_mapped_product(apply_linear_map(*map, product),
                                         opt.points, opt.basis_prefix)
                 : verify_product(product, opt.points, opt.basis_prefix);
  } else {
    report = verify_decomposition(decomposition_from_json(text), opt.points,
                                  opt.basis_prefix);
  }
  if (!report.pass) {
    emit_error("VerificationFailure", report.witness);
    return kExitVerifyFailure;
  }
  std::cout << "verified: " << path << "\n";
  return kExitPass;
}

int run_witness(const std::string& path, const CommonOptions& opt) {
  using namespace steinhaus;
  Decomposition d = decomposition_from_json(read_file(path));
  if (opt.precision_cap) d.basis.set_precision_cap(*opt.precision_cap);
  const GroupElement witness =
      find_uncovered_point(d.translates, d.interval, d.basis);
  write_output(opt.out, group_element_to_json(witness));
  return kExitPass;
}

int run_product(const std::string& path, const CommonOptions& opt) {
  using namespace steinhaus;
  const ParallelepipedSpec spec = parallelepiped_from_json(read_file(path));
  std::vector<Decomposition> axes;
  std::vector<std::size_t> prefix;
  for (const AxisSpec& axis : spec.axes) {
    const Rational epsilon =
        axis.epsilon ? *axis.epsilon : parse_rational(opt.epsilon);
    BasisSpec basis = new_basis(epsilon, ThetaDescriptor{},
                                effective_precision_cap(opt.precision_cap));
    const RealInterval interval = parse_interval(axis.interval_text, basis);
    axes.push_back(decompose(interval, epsilon, opt.steps, basis));
    prefix.push_back(axes.back().translates.size());
  }
  const ProductDecomposition product =
      product_decompose(std::move(axes), std::move(prefix));
  write_output(opt.out, product_to_json(product, spec.matrix));
  return kExitPass;
}

int run_plot(const std::string& path, const CommonOptions& opt) {
  using namespace steinhaus;
  const std::string text = read_file(path);
  std::string svg;
  if (text.find("\"axes\"") != std::string::npos) {
    std::optional<RationalMatrix> map;
    const ProductDecomposition product = product_from_json(text, &map);
    svg = product_to_svg(product, opt.points, map);
  } else {
    svg = decomposition_to_svg(decomposition_from_json(text),
                               opt.basis_prefix);
  }
  write_output(opt.out, svg);
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact interval decompositions: A + B direct sums over a "
               "Q-independent basis"};
  app.require_subcommand(1);

  CommonOptions opt;
  std::string input_path;

  auto add_common = [&opt](CLI::App* cmd, bool with_input_flags) {
    if (with_input_flags) {
      cmd->add_option("--epsilon", opt.epsilon, "epsilon as a rational p/q");
      cmd->add_option("--interval", opt.interval, "interval literal");
      cmd->add_option("--steps", opt.steps, "inductive steps to run");
    }
    cmd->add_option("--precision-cap", opt.precision_cap,
                    "refinement precision cap in bits");
    cmd->add_option("--points", opt.points, "enumeration points to check");
    cmd->add_option("--basis-prefix", opt.basis_prefix,
                    "basis indices to check or draw");
    cmd->add_option("--out", opt.out, "output file (stdout when absent)");
    cmd->add_option("--format", opt.format, "json | csv | svg");
  };

  CLI::App* basis_cmd =
      app.add_subcommand("basis", "build a basis and verify its windows");
  add_common(basis_cmd, true);

  CLI::App* decompose_cmd =
      app.add_subcommand("decompose", "run the decomposition engine");
  add_common(decompose_cmd, true);

  CLI::App* verify_cmd =
      app.add_subcommand("verify", "re-verify a decomposition file");
  verify_cmd->add_option("file", input_path, "decomposition or product JSON")
      ->required();
  add_common(verify_cmd, false);

  CLI::App* witness_cmd = app.add_subcommand(
      "witness", "exhibit an uncovered point of C for a decomposition");
  witness_cmd->add_option("file", input_path, "decomposition JSON")
      ->required();
  add_common(witness_cmd, false);

  CLI::App* product_cmd =
      app.add_subcommand("product", "run per-axis engines from a spec file");
  product_cmd->add_option("file", input_path, "parallelepiped spec JSON")
      ->required();
  add_common(product_cmd, true);

  CLI::App* plot_cmd = app.add_subcommand("plot", "render a run as SVG");
  plot_cmd->add_option("file", input_path, "decomposition or product JSON")
      ->required();
  add_common(plot_cmd, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (basis_cmd->parsed()) return run_basis(opt);
    if (decompose_cmd->parsed()) return run_decompose(opt);
    if (verify_cmd->parsed()) return run_verify(input_path, opt);
    if (witness_cmd->parsed()) return run_witness(input_path, opt);
    if (product_cmd->parsed()) return run_product(input_path, opt);
    if (plot_cmd->parsed()) return run_plot(input_path, opt);
  } catch (const steinhaus::ParseError& e) {
    emit_error("ParseError", e.what());
    return kExitUsage;
  } catch (const steinhaus::InvalidEpsilon& e) {
    emit_error("InvalidEpsilon", e.what());
    return kExitUsage;
  } catch (const steinhaus::IntervalTooShort& e) {
    emit_error("IntervalTooShort", e.what());
    return kExitUsage;
  } catch (const steinhaus::DimensionMismatch& e) {
    emit_error("DimensionMismatch", e.what());
    return kExitUsage;
  } catch (const steinhaus::SingularMatrix& e) {
    emit_error("SingularMatrix", e.what());
    return kExitUsage;
  } catch (const steinhaus::PrecisionExhausted& e) {
    emit_error("PrecisionExhausted", e.what());
    return kExitKernel;
  } catch (const steinhaus::Error& e) {
    emit_error("Error", e.what());
    return kExitKernel;
  } catch (const std::exception& e) {
    emit_error("InternalError", e.what());
    return kExitKernel;
  }
  return kExitUsage;
}
