#ifndef OAX_SEEDS_HPP
#define OAX_SEEDS_HPP

#include <cstdint>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include <oax/spectral.hpp>

namespace oax {

// Deterministic seed-constant generation: identical --seed values must
// reproduce identical reports byte for byte.
class SeedStream {
public:
  explicit SeedStream(std::uint64_t seed) : eng_(seed) {}

  Rational rational(int num_abs = 4, int den_max = 3, bool nonzero = false) {
    for (;;) {
      int num = static_cast<int>(eng_() % static_cast<std::uint64_t>(2 * num_abs + 1)) - num_abs;
      int den = 1 + static_cast<int>(eng_() % static_cast<std::uint64_t>(den_max));
      Rational r(num, den);
      if (!nonzero || r != 0) return r;
    }
  }

  VectorSeedSet vector_seeds(int n, int order) {
    VectorSeedSet s;
    for (int j = 0; j <= order; ++j) {
      std::vector<Rational> row;
      for (int g = 0; g < n; ++g) row.push_back(rational(4, 3, true));
      s.h.push_back(std::move(row));
    }
    return s;
  }

  ScalarSeedSet scalar_seeds(int n, int order) {
    ScalarSeedSet s;
    for (int k = 0; k <= order; ++k) s.b.push_back(rational(4, 3, false));
    for (int j = 0; j <= order; ++j) {
      std::vector<Rational> row;
      for (int g = 0; g < n; ++g) row.push_back(rational(4, 3, true));
      s.d.push_back(std::move(row));
    }
    return s;
  }

private:
  std::mt19937_64 eng_;
};

struct SeedPair {
  VectorSeedSet h;
  ScalarSeedSet bd;
};

inline std::vector<SeedPair> generate_seed_pairs(std::uint64_t seed, int n, int order, int count) {
  SeedStream stream(seed);
  std::vector<SeedPair> out;
  for (int i = 0; i < count; ++i) out.push_back(SeedPair{stream.vector_seeds(n, order), stream.scalar_seeds(n, order)});
  return out;
}

// JSON seeds file: {"sets": [{"h": [["1","0"],...], "b": ["0",...], "d": [["1","0"],...]}]}
// h and d are indexed [j][gamma]; missing rows are zero-padded to the order.
inline std::vector<SeedPair> load_seed_file(const std::string& path, int n, int order) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open seeds file: " + path);
  nlohmann::json j;
  in >> j;
  if (!j.contains("sets") || !j["sets"].is_array()) throw Error("seeds file needs a 'sets' array");
  std::vector<SeedPair> out;
  auto to_rows = [&](const nlohmann::json& rows) {
    std::vector<std::vector<Rational>> v(static_cast<std::size_t>(order) + 1,
                                         std::vector<Rational>(static_cast<std::size_t>(n), Rational(0)));
    for (std::size_t r = 0; r < rows.size() && r <= static_cast<std::size_t>(order); ++r)
      for (std::size_t c = 0; c < rows[r].size() && c < static_cast<std::size_t>(n); ++c)
        v[r][c] = rational_from_string(rows[r][c].get<std::string>());
    return v;
  };
  for (const auto& set : j["sets"]) {
    SeedPair p;
    p.h.h = to_rows(set.value("h", nlohmann::json::array()));
    p.bd.d = to_rows(set.value("d", nlohmann::json::array()));
    p.bd.b.assign(static_cast<std::size_t>(order) + 1, Rational(0));
    if (set.contains("b"))
      for (std::size_t k = 0; k < set["b"].size() && k <= static_cast<std::size_t>(order); ++k)
        p.bd.b[k] = rational_from_string(set["b"][k].get<std::string>());
    out.push_back(std::move(p));
  }
  if (out.empty()) throw Error("seeds file contains no sets");
  return out;
}

}  // namespace oax

#endif
