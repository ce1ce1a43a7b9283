#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "gmtame/report.hpp"

namespace {

using namespace gmtame;

struct Options {
  std::string input;
  std::string vars;
  std::string format = "text";
  std::string checks = "fast";
  int k_max = 0;
  int jobs = 1;
  bool verbose = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// "@path" reads the polynomial from a file, anything else is the polynomial.
std::string polynomial_text(const std::string& input) {
  if (input.empty() || input[0] != '@') return input;
  std::string text = read_file(input.substr(1));
  std::string out;
  std::istringstream ls(text);
  for (std::string line; std::getline(ls, line);) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    out += line + " ";
  }
  return out;
}

std::vector<std::string> split_vars(const std::string& s) {
  std::vector<std::string> v;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      v.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty() || !v.empty()) v.push_back(cur);
  return v;
}

CheckLevel check_level(const std::string& s) {
  if (s == "off") return CheckLevel::Off;
  if (s == "full") return CheckLevel::Full;
  return CheckLevel::Fast;
}

PipelineConfig config_of(const Options& o) {
  PipelineConfig cfg;
  cfg.checks = check_level(o.checks);
  cfg.k_max = o.k_max;
  return cfg;
}

std::pair<Poly, std::vector<std::string>> parse_input(const std::string& text, const std::string& vars_flag) {
  std::vector<std::string> vars = vars_flag.empty() ? discover_variables(text) : split_vars(vars_flag);
  Poly f = parse_poly(text, vars);
  if (f.theta_degree() != 0 || f.theta_min() != 0) throw Error(ErrorKind::Parse, "f must not involve theta");
  return {f, vars};
}

void print_stats(const PipelineStats& s) {
  std::cerr << "k = " << s.k << ", k0 = " << s.k0 << ", l = " << s.l << ", lattice probes = " << s.lattice_probes
            << ", mean retries = " << s.mean_retries << ", saturation steps = " << s.saturation_steps
            << ", twist rounds = " << s.twist_rounds << ", corrections = " << s.corrections << "\n";
}

int report_error(const Error& e, const Options& o) {
  if (o.format == "json") {
    json j{{"error", to_string(e.kind())}, {"message", e.what()}, {"exit_code", exit_code(e.kind())}};
    std::cout << j.dump(2) << "\n";
  }
  std::cerr << "gmtame: " << e.what() << "\n";
  return exit_code(e.kind());
}

int cmd_spectrum(const Options& o) {
  auto [f, vars] = parse_input(polynomial_text(o.input), o.vars);
  SpectrumStage st = spectrum_of(f, config_of(o));
  if (o.verbose) print_stats(st.stats);
  if (o.format == "json") std::cout << to_json(st.spectrum).dump(2) << "\n";
  else std::cout << spectrum_text(st.spectrum);
  return 0;
}

int cmd_goodbasis(const Options& o) {
  auto [f, vars] = parse_input(polynomial_text(o.input), o.vars);
  PipelineResult r = run(f, vars, config_of(o));
  if (o.verbose) print_stats(r.stats);
  if (o.format == "json") std::cout << to_json(r).dump(2) << "\n";
  else std::cout << result_text(r);
  return 0;
}

// One corpus case: a polynomial with either expected results or an expected
// error kind. Returns an empty string on success, else a diff.
std::string verify_case(const json& c, const Options& o) {
  const std::string text = c.at("polynomial").get<std::string>();
  std::string vars_flag;
  if (c.contains("vars")) {
    for (const auto& v : c["vars"]) vars_flag += (vars_flag.empty() ? "" : ",") + v.get<std::string>();
  }
  try {
    auto [f, vars] = parse_input(text, vars_flag);
    PipelineResult r = run(f, vars, config_of(o));
    if (c.contains("expect_error")) return "  expected error " + c["expect_error"].get<std::string>() + ", got a result\n";
    const json& ex = c.at("expect");
    std::string diff;
    if (ex.contains("mu") && ex["mu"].get<std::size_t>() != r.mu)
      diff += "  mu: expected " + std::to_string(ex["mu"].get<std::size_t>()) + ", got " + std::to_string(r.mu) + "\n";
    if (ex.contains("spectrum")) {
      SpectrumData want = spectrum_from_json(ex);
      if (!(want.values == r.spectrum.values))
        diff += "  spectrum: expected " + want.str() + ", got " + r.spectrum.str() + "\n";
    }
    if (ex.contains("monodromy")) {
      std::vector<MonodromyClass> want;
      for (const auto& m : ex["monodromy"]) want.push_back(monodromy_class_from_json(m));
      if (want != r.monodromy.classes) {
        json w = json::array();
        for (const auto& m : want) w.push_back(to_json(m));
        diff += "  monodromy: expected " + w.dump() + ", got " + to_json(r.monodromy).at("classes").dump() + "\n";
      }
    }
    return diff;
  } catch (const Error& e) {
    std::string kind = to_string(e.kind());
    if (c.contains("expect_error") && c["expect_error"].get<std::string>() == kind) return "";
    return "  unexpected error: " + std::string(e.what()) + "\n";
  }
}

int cmd_verify(const Options& o) {
  json corpus;
  try {
    corpus = json::parse(read_file(o.input));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("corpus is not valid JSON: ") + e.what());
  }
  const json cases = corpus.contains("cases") ? corpus["cases"] : json::array();
  if (cases.empty()) {
    std::cerr << "gmtame: warning: corpus has no cases\n";
    return 0;
  }
  std::vector<std::string> diffs(cases.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < cases.size();) diffs[i] = verify_case(cases[i], o);
  };
  std::vector<std::thread> pool;
  const int jobs = std::clamp(o.jobs, 1, static_cast<int>(cases.size()));
  for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  int failed = 0;
  json report = json::array();
  for (std::size_t i = 0; i < cases.size(); ++i) {
    std::string name = cases[i].value("name", "case " + std::to_string(i + 1));
    bool ok = diffs[i].empty();
    failed += !ok;
    if (o.format == "json") {
      report.push_back({{"name", name}, {"pass", ok}, {"diff", diffs[i]}});
    } else {
      std::cout << (ok ? "PASS " : "FAIL ") << name << "\n" << diffs[i];
    }
  }
  if (o.format == "json")
    std::cout << json{{"cases", report}, {"passed", cases.size() - failed}, {"failed", failed}}.dump(2) << "\n";
  else
    std::cout << cases.size() - static_cast<std::size_t>(failed) << "/" << cases.size() << " cases passed\n";
  return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Good bases, spectra and monodromy at infinity of tame polynomials"};
  app.require_subcommand(1);
  Options o;
  auto add_common = [&](CLI::App* sub, const char* what) {
    sub->add_option("input", o.input, what)->required();
    sub->add_option("--vars", o.vars, "comma separated variable order (default: sorted names)");
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--checks", o.checks, "invariant checks")->check(CLI::IsMember({"off", "fast", "full"}));
    sub->add_option("--k-max", o.k_max, "largest approximation degree k")->check(CLI::PositiveNumber);
    sub->add_flag("--verbose", o.verbose, "print iteration counts to stderr");
  };
  auto* spectrum = app.add_subcommand("spectrum", "spectrum of f");
  add_common(spectrum, "polynomial, or @file");
  auto* goodbasis = app.add_subcommand("goodbasis", "good basis, matrices A0 and A1, spectrum and monodromy");
  add_common(goodbasis, "polynomial, or @file");
  auto* verify = app.add_subcommand("verify", "check a corpus of expected results");
  add_common(verify, "corpus JSON file");
  verify->add_option("--jobs", o.jobs, "parallel cases")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*spectrum) return cmd_spectrum(o);
    if (*goodbasis) return cmd_goodbasis(o);
    return cmd_verify(o);
  } catch (const Error& e) {
    return report_error(e, o);
  } catch (const std::exception& e) {
    std::cerr << "gmtame: internal error: " << e.what() << "\n";
    return 5;
  }
}
