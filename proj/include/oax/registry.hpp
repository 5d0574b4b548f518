#ifndef OAX_REGISTRY_HPP
#define OAX_REGISTRY_HPP

#include <optional>
#include <string>
#include <vector>

#include <oax/solution_io.hpp>

namespace oax {

// Built-in solution files. The four solutions are verified exactly by the
// residual gate on every load; the two counterexamples are kept for the
// rejection path and must stay rejected.
struct BundledEntry {
  const char* name;
  bool counterexample;
  const char* text;
};

inline const std::vector<BundledEntry>& bundled_entries() {
  static const std::vector<BundledEntry> entries = {
      {"linear-n3", false,
       "# linear displacement, trivially flat\n"
       "dim 3\n"
       "kind oae\n"
       "K1 x1+2*x2\n"
       "K2 x3/3\n"
       "K3 x1-x2+x3\n"},
      {"algebra-n2", false,
       "# quadratic displacement of the constant algebra with unity e1,\n"
       "# nilpotent e2 (e2*e2 = 0)\n"
       "dim 2\n"
       "kind oae\n"
       "K1 x1^2/2\n"
       "K2 x1*x2\n"},
      {"a3-wdvv", false,
       "# quintic three-variable prepotential, antidiagonal metric\n"
       "dim 3\n"
       "kind wdvv\n"
       "eta 0 0 1 0 1 0 1 0 0\n"
       "F x1^2*x3/2+x1*x2^2/2+x2^2*x3^2/4+x3^5/60\n"},
      {"commuting-cubic", false,
       "# cubic prepotential whose raised Hessian-derivative matrices commute;\n"
       "# found by the coefficient search in the transform tests\n"
       "dim 2\n"
       "kind wdvv\n"
       "eta 1 0 0 1\n"
       "F x1^3/6+x1^2*x2+x1*x2^2/2+x2^3/3\n"},
      {"nonassoc-n2", true,
       "# counterexample: the underlying constant algebra is not associative\n"
       "dim 2\n"
       "kind oae\n"
       "K1 x1^2/2+x2^2/2\n"
       "K2 0\n"},
      {"bad-wdvv-n3", true,
       "# counterexample: fails the associativity system\n"
       "dim 3\n"
       "kind wdvv\n"
       "eta 1 0 0 0 1 0 0 0 1\n"
       "F x1*x2*x3+x1^3\n"},
  };
  return entries;
}

inline std::optional<std::string> bundled_text(const std::string& name) {
  for (const auto& e : bundled_entries())
    if (name == e.name) return std::string(e.text);
  return std::nullopt;
}

inline std::vector<std::string> bundled_names(bool include_counterexamples = true) {
  std::vector<std::string> names;
  for (const auto& e : bundled_entries())
    if (include_counterexamples || !e.counterexample) names.push_back(e.name);
  return names;
}

// Resolves a bundle name or a filesystem path; returns the raw text and id.
inline std::pair<std::string, std::string> resolve_input(const std::string& name_or_path) {
  if (auto t = bundled_text(name_or_path)) return {*t, name_or_path};
  std::ifstream in(name_or_path);
  if (!in) throw Error("unknown bundle and unreadable path: " + name_or_path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string id = name_or_path;
  if (auto pos = id.find_last_of('/'); pos != std::string::npos) id = id.substr(pos + 1);
  if (auto pos = id.rfind(".sol"); pos != std::string::npos && pos == id.size() - 4) id = id.substr(0, pos);
  return {buf.str(), id};
}

}  // namespace oax

#endif
