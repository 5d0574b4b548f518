#ifndef OAX_SOLUTION_IO_HPP
#define OAX_SOLUTION_IO_HPP

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <oax/model.hpp>
#include <oax/parser.hpp>
#include <oax/tower.hpp>

namespace oax {

// Line-oriented solution file:
//   # comment
//   dim <n>
//   kind oae|wdvv
//   eta <n*n rationals row-major>     (wdvv)
//   F <expr>                          (wdvv)
//   K<a> <expr>                       (oae, a = 1..n)
// Expressions follow the polynomial grammar.
struct ParsedSolution {
  enum class Kind { kOae, kWdvv };

  std::string id;
  Kind kind = Kind::kOae;
  int dim = 0;
  std::vector<Polynomial> kcomps;       // oae payload
  std::optional<Polynomial> prepotential;  // wdvv payload
  std::optional<RationalMatrix> eta;

  Chart chart() const { return Chart(dim); }
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace detail

inline ParsedSolution parse_solution_text(const std::string& text, const std::string& id) {
  ParsedSolution out;
  out.id = id;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  std::optional<std::string> kind_str;
  std::vector<std::pair<int, std::string>> klines;  // (component, expr)
  std::optional<std::string> fline;
  std::optional<std::string> eta_line;

  auto err = [&](const std::string& msg) -> ParseError { return ParseError(static_cast<std::size_t>(lineno), msg + " (line " + std::to_string(lineno) + ")"); };

  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    if (auto pos = line.find('#'); pos != std::string::npos) line = line.substr(0, pos);
    line = detail::trim(line);
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    std::string rest;
    std::getline(ls, rest);
    rest = detail::trim(rest);
    if (key == "dim") {
      try {
        out.dim = std::stoi(rest);
      } catch (...) {
        throw err("bad dimension value '" + rest + "'");
      }
      if (out.dim < 1 || out.dim > Chart::kMaxDim) throw err("dimension out of range");
    } else if (key == "kind") {
      kind_str = rest;
    } else if (key == "eta") {
      eta_line = rest;
    } else if (key == "F") {
      fline = rest;
    } else if (key.size() >= 2 && key[0] == 'K') {
      int comp = 0;
      try {
        comp = std::stoi(key.substr(1));
      } catch (...) {
        throw err("bad component key '" + key + "'");
      }
      klines.emplace_back(comp, rest);
    } else {
      throw err("unknown key '" + key + "'");
    }
  }
  lineno = 0;

  if (out.dim == 0) throw ParseError(0, "missing 'dim' line");
  if (!kind_str) throw ParseError(0, "missing 'kind' line");
  Chart chart(out.dim);

  if (*kind_str == "oae") {
    out.kind = ParsedSolution::Kind::kOae;
    if (fline || eta_line) throw ParseError(0, "'F'/'eta' lines are only valid for kind wdvv");
    out.kcomps.assign(static_cast<std::size_t>(out.dim), Polynomial(out.dim));
    std::vector<bool> seen(static_cast<std::size_t>(out.dim), false);
    for (const auto& [comp, expr] : klines) {
      if (comp < 1 || comp > out.dim) throw ParseError(0, "component K" + std::to_string(comp) + " out of range");
      if (seen[static_cast<std::size_t>(comp - 1)]) throw ParseError(0, "duplicate component K" + std::to_string(comp));
      seen[static_cast<std::size_t>(comp - 1)] = true;
      out.kcomps[static_cast<std::size_t>(comp - 1)] = parse_polynomial(expr, chart);
    }
    for (int a = 0; a < out.dim; ++a)
      if (!seen[static_cast<std::size_t>(a)]) throw ParseError(0, "missing component K" + std::to_string(a + 1));
  } else if (*kind_str == "wdvv") {
    out.kind = ParsedSolution::Kind::kWdvv;
    if (!klines.empty()) throw ParseError(0, "'K' lines are only valid for kind oae");
    if (!fline) throw ParseError(0, "missing 'F' line");
    if (!eta_line) throw ParseError(0, "missing 'eta' line");
    out.prepotential = parse_polynomial(*fline, chart);
    RationalMatrix eta(out.dim);
    std::istringstream es(*eta_line);
    for (int i = 0; i < out.dim; ++i)
      for (int j = 0; j < out.dim; ++j) {
        std::string tok;
        if (!(es >> tok)) throw ParseError(0, "eta needs " + std::to_string(out.dim * out.dim) + " entries");
        eta.at(i, j) = rational_from_string(tok);
      }
    std::string extra;
    if (es >> extra) throw ParseError(0, "too many eta entries");
    out.eta = std::move(eta);
  } else {
    throw ParseError(0, "unknown kind '" + *kind_str + "'");
  }
  return out;
}

inline std::string serialize_solution(const ParsedSolution& s) {
  std::string out;
  out += "dim " + std::to_string(s.dim) + "\n";
  if (s.kind == ParsedSolution::Kind::kOae) {
    out += "kind oae\n";
    for (int a = 0; a < s.dim; ++a)
      out += "K" + std::to_string(a + 1) + " " + s.kcomps[static_cast<std::size_t>(a)].to_string() + "\n";
  } else {
    out += "kind wdvv\n";
    out += "eta";
    for (int i = 0; i < s.dim; ++i)
      for (int j = 0; j < s.dim; ++j) out += " " + rational_to_string(s.eta->at(i, j));
    out += "\n";
    out += "F " + s.prepotential->to_string() + "\n";
  }
  return out;
}

// A solution bundle is trusted only after its residual verified zero.
struct SolutionBundle {
  ParsedSolution data;
  DisplacementField K;  // the oae payload, or the gradient reduction of F
  std::optional<Prepotential> prepotential;
  bool trusted = false;
  std::string rejection;  // residual witness when untrusted

  bool is_wdvv() const { return data.kind == ParsedSolution::Kind::kWdvv; }
  int dim() const { return data.dim; }
};

// Builds the bundle and runs the residual gate; never throws on a residual
// failure (the verdict lands in `trusted`/`rejection`), but propagates
// parse/shape errors.
inline SolutionBundle make_bundle(const ParsedSolution& parsed) {
  Chart chart = parsed.chart();
  if (parsed.kind == ParsedSolution::Kind::kOae) {
    DisplacementField k(chart, parsed.kcomps);
    ResidualTensor r = residual_oae(k);
    SolutionBundle b{parsed, std::move(k), std::nullopt, r.is_zero(), r.is_zero() ? "" : r.witness_string()};
    return b;
  }
  Prepotential f(chart, *parsed.prepotential, Metric(*parsed.eta));
  ResidualTensor r = residual_wdvv(f);
  SolutionBundle b{parsed, gradient_reduce(f), f, r.is_zero(), r.is_zero() ? "" : r.witness_string()};
  return b;
}

inline ParsedSolution parse_solution_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open solution file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string id = path;
  if (auto pos = id.find_last_of('/'); pos != std::string::npos) id = id.substr(pos + 1);
  if (auto pos = id.rfind(".sol"); pos != std::string::npos && pos == id.size() - 4) id = id.substr(0, pos);
  return parse_solution_text(buf.str(), id);
}

// Parse + residual gate; throws NotASolutionError on rejection.
inline SolutionBundle load_solution(const std::string& path) {
  SolutionBundle b = make_bundle(parse_solution_file(path));
  if (!b.trusted) throw NotASolutionError(b.rejection);
  return b;
}

}  // namespace oax

#endif
