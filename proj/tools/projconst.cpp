// Command-line front end: spectra, census enumeration, weight optimization,
// closed-form bounds, certificate emission and re-verification.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "projconst/projconst.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

std::vector<double> parse_weight_list(const std::string& csv) {
  std::vector<double> w;
  std::stringstream in(csv);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (tok.empty()) throw std::runtime_error("empty weight in list");
    std::size_t used = 0;
    w.push_back(std::stod(tok, &used));
    if (used != tok.size()) throw std::runtime_error("bad weight token '" + tok + "'");
  }
  if (w.empty()) throw std::runtime_error("empty weight list");
  return w;
}

std::string iso_timestamp() {
  std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

void print_report(const projconst::VerifyReport& rep) {
  for (const auto& check : rep.checks) {
    std::cout << (check.pass ? "[PASS] " : "[FAIL] ") << check.name;
    if (!check.detail.empty()) std::cout << " (" << check.detail << ")";
    std::cout << "\n";
  }
  std::cout << (rep.pass() ? "PASS" : "FAIL") << "\n";
}

int emit_certificate(const projconst::CertificateRecord& rec, const std::string& out_path) {
  const std::string text = projconst::serialize_record(rec);
  if (out_path.empty())
    std::cout << text;
  else
    write_file(out_path, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace projconst;

  CLI::App app{"lower bounds for relative projection constants via two-graph spectra"};
  app.require_subcommand(1);
  int jobs = 0;
  app.add_option("--jobs", jobs, "worker thread cap (default: PROJCONST_JOBS or hardware)");

  // eig
  auto* eig_cmd = app.add_subcommand("eig", "eigenvalues of a matrix file");
  std::string eig_file;
  bool eig_general = false;
  eig_cmd->add_option("file", eig_file, "matrix file")->required();
  eig_cmd->add_flag("--general", eig_general, "parse a general symmetric matrix");

  // objective
  auto* obj_cmd = app.add_subcommand("objective", "partial eigenvalue sum at given weights");
  std::string obj_file, obj_weights;
  int obj_n = 0;
  obj_cmd->add_option("file", obj_file, "sign matrix file")->required();
  obj_cmd->add_option("--n", obj_n, "number of top eigenvalues")->required();
  obj_cmd->add_option("--weights", obj_weights, "comma-separated weights w1,...,wd")->required();

  // optimize
  auto* opt_cmd = app.add_subcommand("optimize", "maximize the objective over the weight simplex");
  std::string opt_file, opt_out;
  int opt_n = 0, opt_starts = 16;
  std::uint64_t opt_seed = 0;
  bool opt_timestamp = false;
  opt_cmd->add_option("file", opt_file, "sign matrix file")->required();
  opt_cmd->add_option("--n", opt_n, "number of top eigenvalues")->required();
  opt_cmd->add_option("--starts", opt_starts, "multistart count");
  opt_cmd->add_option("--seed", opt_seed, "restart seed");
  opt_cmd->add_option("--out", opt_out, "write the certificate record to a file");
  opt_cmd->add_flag("--timestamp", opt_timestamp, "include a timestamp field");

  // enumerate
  auto* enum_cmd = app.add_subcommand("enumerate", "census of switching classes");
  int enum_order = 0, enum_free = 0;
  std::string enum_signature;
  bool enum_matrices = false;
  enum_cmd->add_option("--order", enum_order, "number of vertices (3..7)")->required();
  enum_cmd->add_option("--free", enum_free, "keep only K_M-free classes");
  enum_cmd->add_option("--signature", enum_signature, "keep classes with signature P,Q");
  enum_cmd->add_flag("--matrices", enum_matrices, "print class representatives");

  // search
  auto* search_cmd = app.add_subcommand("search", "maximize over sign matrices and weights");
  int search_n = 0, search_d = 0, search_starts = 16;
  std::uint64_t search_seed = 0;
  std::string search_mode = "exhaustive", search_out;
  bool search_timestamp = false;
  search_cmd->add_option("--n", search_n, "number of top eigenvalues")->required();
  search_cmd->add_option("--d", search_d, "matrix order")->required();
  search_cmd->add_option("--mode", search_mode, "exhaustive | heuristic")
      ->check(CLI::IsMember({"exhaustive", "heuristic"}));
  search_cmd->add_option("--starts", search_starts, "multistart count");
  search_cmd->add_option("--seed", search_seed, "restart seed");
  search_cmd->add_option("--out", search_out, "write the certificate record to a file");
  search_cmd->add_flag("--timestamp", search_timestamp, "include a timestamp field");

  // family
  auto* family_cmd = app.add_subcommand("family", "print family matrices");
  std::string family_kind, family_arg;
  family_cmd->add_option("kind", family_kind, "polygon | a6 | omega | double | complement")
      ->required()
      ->check(CLI::IsMember({"polygon", "a6", "omega", "double", "complement"}));
  family_cmd->add_option("arg", family_arg, "N for polygon, D for omega, FILE otherwise");

  // bound
  auto* bound_cmd = app.add_subcommand("bound", "closed-form upper bounds");
  std::string bound_kind;
  std::vector<std::string> bound_args;
  bound_cmd->add_option("kind", bound_kind, "ks | kll | bohnenblust | lift")
      ->required()
      ->check(CLI::IsMember({"ks", "kll", "bohnenblust", "lift"}));
  bound_cmd->add_option("args", bound_args, "bound arguments");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "reproduce the reference values");
  std::string verify_target;
  std::uint64_t verify_seed = 0;
  verify_cmd->add_option("target", verify_target, "pi2 | pi36 | pi46 | lemmas")
      ->required()
      ->check(CLI::IsMember({"pi2", "pi36", "pi46", "lemmas"}));
  verify_cmd->add_option("--seed", verify_seed, "seed for randomized suites");

  // certify
  auto* certify_cmd = app.add_subcommand("certify", "re-verify a certificate record");
  std::string certify_file;
  certify_cmd->add_option("record", certify_file, "certificate record file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*eig_cmd) {
      const std::string text = read_file(eig_file);
      const Spectrum spec = eig_general ? eigenvalues(parse_general_matrix(text))
                                        : eigenvalues(parse_sign_matrix(text).to_sym());
      for (int k = 0; k < spec.size(); ++k)
        std::cout << (k ? " " : "") << format_screen(spec.values[static_cast<std::size_t>(k)]);
      std::cout << "\n";
      return 0;
    }

    if (*obj_cmd) {
      const SignMatrix a = parse_sign_matrix(read_file(obj_file));
      const std::vector<double> w = parse_weight_list(obj_weights);
      std::cout << format_screen(weighted_objective(a, WeightVector(w), obj_n)) << "\n";
      return 0;
    }

    if (*opt_cmd) {
      const SignMatrix a = parse_sign_matrix(read_file(opt_file));
      OptimizerConfig cfg;
      cfg.starts = opt_starts;
      cfg.seed = opt_seed;
      cfg.jobs = jobs;
      const WeightOptimum opt = maximize_weights(a, opt_n, cfg);
      CertificateRecord rec("optimize", opt_seed, make_certificate(a, opt_n, opt));
      if (opt_timestamp) rec.timestamp = iso_timestamp();
      return emit_certificate(rec, opt_out);
    }

    if (*enum_cmd) {
      std::vector<SignMatrix> reps = enumerate_two_graphs(enum_order, jobs);
      if (enum_free >= 3) {
        std::vector<SignMatrix> kept;
        for (const auto& m : reps)
          if (is_clique_free(two_graph_of(m), enum_free)) kept.push_back(m);
        reps = std::move(kept);
      }
      if (!enum_signature.empty()) {
        int want_plus = 0, want_minus = 0;
        if (std::sscanf(enum_signature.c_str(), "%d,%d", &want_plus, &want_minus) != 2)
          throw std::runtime_error("--signature expects P,Q");
        std::vector<SignMatrix> kept;
        for (const auto& m : reps) {
          const Signature s = signature(m);
          if (s.positive == want_plus && s.negative == want_minus) kept.push_back(m);
        }
        reps = std::move(kept);
      }
      std::cout << "classes = " << reps.size() << "\n";
      for (std::size_t k = 0; k < reps.size(); ++k) {
        const Signature s = signature(reps[k]);
        std::cout << "class " << k + 1 << ": signature (" << s.positive << "," << s.zero << ","
                  << s.negative << ") canonical " << canonical_form(reps[k]) << "\n";
        if (enum_matrices) std::cout << serialize(reps[k]);
      }
      return 0;
    }

    if (*search_cmd) {
      OptimizerConfig cfg;
      cfg.starts = search_starts;
      cfg.seed = search_seed;
      cfg.jobs = jobs;
      const SearchMode mode =
          search_mode == "exhaustive" ? SearchMode::kExhaustive : SearchMode::kHeuristic;
      CertificateRecord rec(search_mode, search_seed,
                            best_constant(search_n, search_d, cfg, mode));
      if (search_timestamp) rec.timestamp = iso_timestamp();
      return emit_certificate(rec, search_out);
    }

    if (*family_cmd) {
      if (family_kind == "polygon") {
        std::cout << serialize(polygon_matrix(std::stoi(family_arg)));
      } else if (family_kind == "a6") {
        std::cout << serialize(a6());
      } else if (family_kind == "omega") {
        const auto members = omega_members(std::stoi(family_arg));
        for (std::size_t k = 0; k < members.size(); ++k) {
          if (k) std::cout << "\n";
          std::cout << serialize(members[k]);
        }
      } else if (family_kind == "double") {
        std::cout << serialize(kronecker_double(parse_sign_matrix(read_file(family_arg))));
      } else {
        std::cout << serialize(complement(parse_sign_matrix(read_file(family_arg))));
      }
      return 0;
    }

    if (*bound_cmd) {
      auto need = [&](std::size_t k) {
        if (bound_args.size() != k)
          throw std::runtime_error("bound " + bound_kind + " expects " + std::to_string(k) +
                                   " argument(s)");
      };
      double value = 0.0;
      if (bound_kind == "ks") {
        need(1);
        value = kadets_snobar(std::stoi(bound_args[0]));
      } else if (bound_kind == "kll") {
        need(2);
        value = kll_upper(std::stoi(bound_args[0]), std::stoi(bound_args[1]));
      } else if (bound_kind == "bohnenblust") {
        need(1);
        value = bohnenblust_upper(std::stoi(bound_args[0]));
      } else {
        need(3);
        value = lift_upper(std::stoi(bound_args[0]), std::stoi(bound_args[1]),
                           std::stod(bound_args[2]));
      }
      std::cout << format_screen(value) << "\n";
      return 0;
    }

    if (*verify_cmd) {
      OptimizerConfig cfg;
      cfg.seed = verify_seed;
      cfg.jobs = jobs;
      VerifyReport rep;
      if (verify_target == "pi2")
        rep = verify_pi2(cfg);
      else if (verify_target == "pi36")
        rep = verify_pi36(cfg);
      else if (verify_target == "pi46")
        rep = verify_pi46(cfg);
      else
        rep = verify_lemmas(cfg);
      print_report(rep);
      return rep.pass() ? 0 : 1;
    }

    if (*certify_cmd) {
      const CertificateRecord rec = parse_record(read_file(certify_file));
      const CertifyReport rep = certify(rec);
      if (rep.pass) {
        std::cout << "PASS\n";
        return 0;
      }
      for (const auto& why : rep.failures) std::cout << "FAIL: " << why << "\n";
      return 1;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
