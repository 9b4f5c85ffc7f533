#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "mouldlab/bch.hpp"
#include "mouldlab/io.hpp"
#include "mouldlab/mould.hpp"
#include "mouldlab/verify.hpp"

namespace {

using namespace mouldlab;

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_usage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return exit_ok;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot open output file '" + path + "'");
  out << text;
  return exit_ok;
}

Mould build_mould(const std::string& name, int bound, int factors, const std::string& alphabet) {
  const AlphabetPtr a = alphabet == "omega" ? omega_alphabet(factors) : Alphabet::integers();
  if (name == "I") return make_I(a, bound);
  if (name == "E") return make_E(a, bound);
  if (name == "S_N") return make_S_N(bound);
  if (name == "T_N") return make_T_N(bound);
  if (name == "S_Omega") return make_S_Omega(factors, bound);
  if (name == "T_Omega") return make_T_Omega(factors, bound);
  if (name == "U") return make_U(factors, bound);
  throw UsageError("unknown mould '" + name + "'");
}

std::string render_report(const std::vector<CheckResult>& results) {
  std::ostringstream os;
  int passed = 0, failed = 0, skipped = 0;
  for (const auto& r : results) {
    os << '[' << r.status() << "] " << r.name;
    if (!r.detail.empty()) os << " : " << r.detail;
    os << '\n';
    if (!r.applicable) ++skipped;
    else if (r.passed) ++passed;
    else ++failed;
  }
  os << passed << " passed, " << failed << " failed, " << skipped << " not applicable\n";
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mouldlab: mould calculus and BCH series"};
  app.require_subcommand(1, 1);

  int factors = 2, degree = 5, bound = 6;
  std::string method = "kimura_log", format = "text", output, name, alphabet = "integer", suite = "all", golden_dir;

  const std::map<std::string, BchMethod> methods{{"dynkin", BchMethod::dynkin},
                                                 {"kimura_product", BchMethod::kimura_product},
                                                 {"kimura_log", BchMethod::kimura_log},
                                                 {"direct", BchMethod::direct}};

  auto* compute = app.add_subcommand("compute", "compute log(e^X1 ... e^XN) or the product series");
  compute->add_option("--factors", factors, "number of exponential factors N")->check(CLI::PositiveNumber);
  compute->add_option("--degree", degree, "truncation degree D")->check(CLI::PositiveNumber);
  compute->add_option("--method", method)->check(CLI::IsMember({"dynkin", "kimura_product", "kimura_log", "direct"}));
  compute->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  compute->add_option("--output", output, "output path, default stdout");

  auto* mould = app.add_subcommand("mould", "tabulate a built-in mould");
  mould->add_option("--name", name)->required()->check(CLI::IsMember({"I", "E", "S_N", "T_N", "S_Omega", "T_Omega", "U"}));
  mould->add_option("--bound", bound, "length or weight bound")->check(CLI::NonNegativeNumber);
  mould->add_option("--factors", factors, "letters for S_Omega, T_Omega, U and omega alphabets")->check(CLI::PositiveNumber);
  mould->add_option("--alphabet", alphabet, "alphabet for I and E")->check(CLI::IsMember({"integer", "omega"}));
  mould->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  mould->add_option("--output", output);

  auto* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("--suite", suite)->check(CLI::IsMember({"all", "mould-identities", "bch", "compose"}));
  verify->add_option("--degree", degree, "degree / bound used by the suites")->check(CLI::PositiveNumber);
  verify->add_option("--golden-dir", golden_dir, "also compare against frozen golden files")->check(CLI::ExistingDirectory);
  verify->add_option("--output", output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (compute->parsed()) {
      const NcSeries s = bch_series(BchRequest{factors, degree, methods.at(method)});
      return write_output(format == "json" ? io::dump(io::series_to_json(s)) : io::series_to_text(s), output);
    }
    if (mould->parsed()) {
      const Mould m = build_mould(name, bound, factors, alphabet);
      return write_output(format == "json" ? io::dump(io::mould_to_json(m)) : io::mould_to_text(m), output);
    }
    std::optional<std::filesystem::path> golden;
    if (!golden_dir.empty()) golden = golden_dir;
    const auto results = verify::run_suite(suite, degree, golden);
    write_output(render_report(results), output);
    return all_passed(results) ? exit_ok : exit_failed;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_failed;
  }
}
