#pragma once

#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "projconst/bounds.hpp"
#include "projconst/core_spectra.hpp"
#include "projconst/errors.hpp"
#include "projconst/objective.hpp"
#include "projconst/search.hpp"
#include "projconst/twograph.hpp"

namespace projconst {

inline constexpr const char* kToolName = "projconst";
inline constexpr const char* kToolVersion = "0.1.0";

// 17 significant digits: enough to round-trip any double exactly.
inline std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// 12 significant digits for screen output.
inline std::string format_screen(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

namespace detail {

inline std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char ch : text) {
    if (ch == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

inline std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> toks;
  std::string tok;
  while (in >> tok) toks.push_back(tok);
  return toks;
}

inline bool blank(const std::string& line) { return tokens_of(line).empty(); }

inline double parse_double_token(const std::string& tok, int line_number) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    throw ParseError(line_number, "expected a number, got '" + tok + "'");
  }
  if (used != tok.size()) throw ParseError(line_number, "trailing characters in '" + tok + "'");
  return v;
}

inline int parse_int_token(const std::string& tok, int line_number) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(tok, &used);
  } catch (const std::exception&) {
    throw ParseError(line_number, "expected an integer, got '" + tok + "'");
  }
  if (used != tok.size()) throw ParseError(line_number, "trailing characters in '" + tok + "'");
  return v;
}

// Shared header/row scan for both matrix formats.
template <typename RowHandler>
inline int parse_matrix_lines(const std::string& text, const RowHandler& on_row) {
  const auto lines = split_lines(text);
  std::size_t ln = 0;
  while (ln < lines.size() && blank(lines[ln])) ++ln;
  if (ln == lines.size()) throw ParseError(1, "empty input, expected matrix order");
  const auto head = tokens_of(lines[ln]);
  if (head.size() != 1)
    throw ParseError(static_cast<int>(ln) + 1, "expected a single integer (matrix order)");
  const int d = parse_int_token(head[0], static_cast<int>(ln) + 1);
  if (d < 1) throw ParseError(static_cast<int>(ln) + 1, "matrix order must be >= 1");
  ++ln;
  for (int row = 0; row < d; ++row, ++ln) {
    if (ln >= lines.size())
      throw ParseError(static_cast<int>(ln) + 1, "unexpected end of input, expected row " +
                                                     std::to_string(row + 1));
    const auto toks = tokens_of(lines[ln]);
    if (static_cast<int>(toks.size()) != d)
      throw ParseError(static_cast<int>(ln) + 1, "expected " + std::to_string(d) +
                                                     " values, got " + std::to_string(toks.size()));
    on_row(d, row, toks, static_cast<int>(ln) + 1);
  }
  for (; ln < lines.size(); ++ln)
    if (!blank(lines[ln]))
      throw ParseError(static_cast<int>(ln) + 1, "unexpected content after matrix rows");
  return d;
}

}  // namespace detail

inline SignMatrix parse_sign_matrix(const std::string& text) {
  std::vector<std::vector<int>> rows;
  std::vector<int> row_lines;
  detail::parse_matrix_lines(text, [&](int d, int row, const std::vector<std::string>& toks,
                                       int line_number) {
    (void)d;
    std::vector<int> vals;
    for (const auto& tok : toks) {
      const int v = detail::parse_int_token(tok, line_number);
      if (v != 1 && v != -1)
        throw ParseError(line_number, "sign matrix entries must be 1 or -1, got '" + tok + "'");
      vals.push_back(v);
    }
    if (vals[static_cast<std::size_t>(row)] != 1)
      throw ParseError(line_number, "diagonal entry must be 1 in sign-matrix mode");
    rows.push_back(std::move(vals));
    row_lines.push_back(line_number);
  });
  const int d = static_cast<int>(rows.size());
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if (rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] !=
          rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)])
        throw ParseError(row_lines[static_cast<std::size_t>(j)],
                         "matrix not symmetric at entry (" + std::to_string(j + 1) + "," +
                             std::to_string(i + 1) + ")");
  return SignMatrix::from_rows(rows);
}

inline SymMatrix parse_general_matrix(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::vector<int> row_lines;
  detail::parse_matrix_lines(text, [&](int d, int row, const std::vector<std::string>& toks,
                                       int line_number) {
    (void)d;
    (void)row;
    std::vector<double> vals;
    for (const auto& tok : toks) vals.push_back(detail::parse_double_token(tok, line_number));
    rows.push_back(std::move(vals));
    row_lines.push_back(line_number);
  });
  const int d = static_cast<int>(rows.size());
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if (rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] !=
          rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)])
        throw ParseError(row_lines[static_cast<std::size_t>(j)],
                         "matrix not symmetric at entry (" + std::to_string(j + 1) + "," +
                             std::to_string(i + 1) + ")");
  return SymMatrix::from_rows(rows);
}

inline std::string serialize(const SignMatrix& m) {
  std::string out = std::to_string(m.order()) + "\n";
  for (int i = 0; i < m.order(); ++i) {
    for (int j = 0; j < m.order(); ++j) {
      if (j > 0) out += ' ';
      out += std::to_string(m.sign(i, j));
    }
    out += '\n';
  }
  return out;
}

inline std::string serialize(const SymMatrix& m) {
  std::string out = std::to_string(m.order()) + "\n";
  for (int i = 0; i < m.order(); ++i) {
    for (int j = 0; j < m.order(); ++j) {
      if (j > 0) out += ' ';
      out += format_full(m(i, j));
    }
    out += '\n';
  }
  return out;
}

// Persisted certificate plus generator metadata. Serialization is a fixed key
// order of flat `key = value` lines; the timestamp is omitted by default so
// identical runs emit byte-identical records.
struct CertificateRecord {
  int schema = 1;
  std::string tool = std::string(kToolName) + " " + kToolVersion;
  std::string mode;
  std::uint64_t seed = 0;
  Certificate certificate;
  std::optional<std::string> timestamp;

  CertificateRecord(std::string mode_, std::uint64_t seed_, Certificate cert)
      : mode(std::move(mode_)), seed(seed_), certificate(std::move(cert)) {}
};

inline std::string serialize_record(const CertificateRecord& rec) {
  const Certificate& c = rec.certificate;
  std::string out;
  out += "schema = " + std::to_string(rec.schema) + "\n";
  out += "tool = " + rec.tool + "\n";
  out += "mode = " + rec.mode + "\n";
  out += "seed = " + std::to_string(rec.seed) + "\n";
  out += "n = " + std::to_string(c.n) + "\n";
  out += "d = " + std::to_string(c.d) + "\n";
  out += "value = " + format_full(c.value) + "\n";
  out += std::string("sign_optimal = ") + (c.sign_optimal ? "true" : "false") + "\n";
  out += std::string("orbit_symmetric = ") + (c.orbit_symmetric ? "true" : "false") + "\n";
  out += std::string("uniform_shortcut_used = ") + (c.uniform_shortcut_used ? "true" : "false") + "\n";
  out += "matrix:\n";
  for (int i = 0; i < c.d; ++i) {
    out += " ";
    for (int j = 0; j < c.d; ++j) out += " " + std::to_string(c.matrix.sign(i, j));
    out += "\n";
  }
  out += "weights =";
  for (int i = 0; i < c.d; ++i) out += " " + format_full(c.weights[i]);
  out += "\n";
  out += "spectrum =";
  for (double v : c.spectrum.values) out += " " + format_full(v);
  out += "\n";
  if (rec.timestamp) out += "timestamp = " + *rec.timestamp + "\n";
  return out;
}

inline CertificateRecord parse_record(const std::string& text) {
  const auto lines = detail::split_lines(text);
  std::optional<int> schema, n, d;
  std::optional<std::string> tool, mode, timestamp;
  std::optional<std::uint64_t> seed;
  std::optional<double> value;
  std::optional<bool> sign_optimal, orbit_symmetric, uniform_shortcut;
  std::vector<std::vector<int>> matrix_rows;
  std::optional<std::vector<double>> weights, spectrum;

  auto parse_bool = [](const std::string& v, int ln) {
    if (v == "true") return true;
    if (v == "false") return false;
    throw ParseError(ln, "expected true/false, got '" + v + "'");
  };

  bool in_matrix = false;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const std::string& line = lines[li];
    const int ln = static_cast<int>(li) + 1;
    if (detail::blank(line)) continue;
    if (in_matrix && line.size() >= 2 && line[0] == ' ') {
      std::vector<int> row;
      for (const auto& tok : detail::tokens_of(line)) {
        const int v = detail::parse_int_token(tok, ln);
        if (v != 1 && v != -1) throw ParseError(ln, "matrix entries must be 1 or -1");
        row.push_back(v);
      }
      matrix_rows.push_back(std::move(row));
      continue;
    }
    in_matrix = false;
    if (line == "matrix:") {
      in_matrix = true;
      continue;
    }
    const auto eq = line.find(" = ");
    if (eq == std::string::npos) throw ParseError(ln, "expected 'key = value' or 'matrix:'");
    const std::string key = line.substr(0, eq);
    const std::string val = line.substr(eq + 3);
    if (key == "schema") {
      schema = detail::parse_int_token(val, ln);
    } else if (key == "tool") {
      tool = val;
    } else if (key == "mode") {
      mode = val;
    } else if (key == "seed") {
      seed = static_cast<std::uint64_t>(std::stoull(val));
    } else if (key == "n") {
      n = detail::parse_int_token(val, ln);
    } else if (key == "d") {
      d = detail::parse_int_token(val, ln);
    } else if (key == "value") {
      value = detail::parse_double_token(val, ln);
    } else if (key == "sign_optimal") {
      sign_optimal = parse_bool(val, ln);
    } else if (key == "orbit_symmetric") {
      orbit_symmetric = parse_bool(val, ln);
    } else if (key == "uniform_shortcut_used") {
      uniform_shortcut = parse_bool(val, ln);
    } else if (key == "weights" || key == "spectrum") {
      std::vector<double> vals;
      for (const auto& tok : detail::tokens_of(val)) vals.push_back(detail::parse_double_token(tok, ln));
      (key == "weights" ? weights : spectrum) = std::move(vals);
    } else if (key == "timestamp") {
      timestamp = val;
    } else {
      throw ParseError(ln, "unknown key '" + key + "'");
    }
  }

  auto require = [](bool have, const char* what) {
    if (!have) throw ParseError(1, std::string("record missing field: ") + what);
  };
  require(schema.has_value(), "schema");
  require(mode.has_value(), "mode");
  require(seed.has_value(), "seed");
  require(n.has_value(), "n");
  require(d.has_value(), "d");
  require(value.has_value(), "value");
  require(sign_optimal.has_value(), "sign_optimal");
  require(orbit_symmetric.has_value(), "orbit_symmetric");
  require(uniform_shortcut.has_value(), "uniform_shortcut_used");
  require(!matrix_rows.empty(), "matrix");
  require(weights.has_value(), "weights");
  require(spectrum.has_value(), "spectrum");

  Certificate cert(*n, *d, SignMatrix::from_rows(matrix_rows), WeightVector(*weights));
  cert.value = *value;
  std::vector<double> spec = *spectrum;
  cert.spectrum = Spectrum(spec);
  cert.sign_optimal = *sign_optimal;
  cert.orbit_symmetric = *orbit_symmetric;
  cert.uniform_shortcut_used = *uniform_shortcut;

  CertificateRecord rec(*mode, *seed, std::move(cert));
  rec.schema = *schema;
  if (tool) rec.tool = *tool;
  rec.timestamp = timestamp;
  return rec;
}

struct CertifyReport {
  bool pass = true;
  std::vector<std::string> failures;

  void fail(std::string why) {
    pass = false;
    failures.push_back(std::move(why));
  }
};

// Independent re-verification of a parsed record: dimensions, recomputed
// value and spectrum, and the proven upper bounds.
inline CertifyReport certify(const CertificateRecord& rec) {
  CertifyReport rep;
  const Certificate& c = rec.certificate;
  if (c.matrix.order() != c.d) rep.fail("matrix order disagrees with d");
  if (c.weights.size() != c.d) rep.fail("weight count disagrees with d");
  if (c.n < 1 || c.n > c.d) rep.fail("n out of range");
  if (c.spectrum.size() != c.d) rep.fail("spectrum length disagrees with d");
  if (!rep.pass) return rep;

  const double recomputed = weighted_objective(c.matrix, c.weights, c.n);
  if (std::abs(recomputed - c.value) > kCertificateValueTolerance)
    rep.fail("value does not recompute: stored " + format_full(c.value) + ", recomputed " +
             format_full(recomputed));
  const Spectrum spec = weighted_spectrum(c.matrix, c.weights.values());
  for (int k = 0; k < c.d; ++k)
    if (std::abs(spec.values[static_cast<std::size_t>(k)] -
                 c.spectrum.values[static_cast<std::size_t>(k)]) > 1e-9) {
      rep.fail("spectrum does not recompute at position " + std::to_string(k + 1));
      break;
    }
  if (c.value > kll_upper(c.n, c.d) + kCertificateBoundSlack)
    rep.fail("value exceeds the equiangular-line upper bound");
  if (c.value > kadets_snobar(c.n) + kCertificateBoundSlack)
    rep.fail("value exceeds sqrt(n)");
  return rep;
}

}  // namespace projconst
