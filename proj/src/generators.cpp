#include "ipa/generators.hpp"

#include <stdexcept>
#include <string>

#include "ipa/rng.hpp"

namespace ipa {

bool is_odd_prime(int p) {
  if (p < 3 || p % 2 == 0) return false;
  for (int d = 3; static_cast<long long>(d) * d <= p; d += 2) {
    if (p % d == 0) return false;
  }
  return true;
}

MeasurementMatrix array_ldpc(int p) {
  if (!is_odd_prime(p)) {
    throw std::invalid_argument("array construction requires an odd prime, got " +
                                std::to_string(p));
  }
  // Block (r, j) is the p x p circulant shifting by r*j positions: block row 0
  // is all identities, block row 1 holds P^j, block row 2 holds P^(2j).
  std::vector<MatrixEntry> entries;
  entries.reserve(static_cast<std::size_t>(3) * p * p);
  for (int r = 0; r < 3; ++r) {
    for (int j = 0; j < p; ++j) {
      const int shift = (r * j) % p;
      for (int a = 0; a < p; ++a) {
        entries.push_back({r * p + a, j * p + (a + shift) % p, 1.0});
      }
    }
  }
  return MeasurementMatrix(3 * p, p * p, std::move(entries));
}

MeasurementMatrix protograph_lift(const std::vector<std::vector<int>>& proto,
                                  int lift, std::uint64_t seed) {
  if (proto.empty() || proto.front().empty()) {
    throw std::invalid_argument("base matrix must be nonempty");
  }
  const int block_rows = static_cast<int>(proto.size());
  const int block_cols = static_cast<int>(proto.front().size());
  for (const auto& row : proto) {
    if (static_cast<int>(row.size()) != block_cols) {
      throw std::invalid_argument("base matrix rows have unequal lengths");
    }
    for (int w : row) {
      if (w < 0) throw std::invalid_argument("base matrix entries must be >= 0");
      if (w > lift) {
        throw std::invalid_argument(
            "lift factor " + std::to_string(lift) +
            " too small for base entry " + std::to_string(w));
      }
    }
  }

  SplitMix64 root(seed);
  std::vector<MatrixEntry> entries;
  for (int br = 0; br < block_rows; ++br) {
    for (int bc = 0; bc < block_cols; ++bc) {
      const int w = proto[br][bc];
      if (w == 0) continue;
      SplitMix64 block_rng =
          root.split(static_cast<std::uint64_t>(br) * block_cols + bc);
      const std::vector<int> offsets =
          sample_without_replacement(block_rng, lift, w);
      // Row r of the circulant is the first row shifted right r times.
      for (int r = 0; r < lift; ++r) {
        for (int s : offsets) {
          entries.push_back(
              {br * lift + r, bc * lift + (s + r) % lift, 1.0});
        }
      }
    }
  }
  return MeasurementMatrix(block_rows * lift, block_cols * lift,
                           std::move(entries));
}

namespace {

MeasurementMatrix from_check_lists(int checks, int vars,
                                   const std::vector<std::vector<int>>& rows) {
  std::vector<MatrixEntry> entries;
  for (int c = 0; c < checks; ++c) {
    for (int v : rows[c]) entries.push_back({c, v, 1.0});
  }
  return MeasurementMatrix(checks, vars, std::move(entries));
}

}  // namespace

BuiltinInstance builtin_instance(std::string_view name) {
  if (name == "fig1") {
    return BuiltinInstance{
        "fig1",
        from_check_lists(3, 7,
                         {{0, 2, 4, 6}, {1, 2, 5, 6}, {3, 4, 5, 6}}),
        {{"T", {0, 1}}}};
  }
  if (name == "fig2") {
    return BuiltinInstance{
        "fig2",
        from_check_lists(3, 7,
                         {{0, 1, 4, 6}, {1, 2, 5}, {2, 3, 4, 5, 6}}),
        {{"T", {1, 2, 5}}}};
  }
  if (name == "fig5") {
    return BuiltinInstance{
        "fig5",
        from_check_lists(4, 6, {{0, 1, 5}, {0, 3, 4}, {1, 2, 5}, {2, 3, 4}}),
        {{"V_S", {0, 1, 2, 3}}}};
  }
  throw std::invalid_argument("unknown builtin instance: " + std::string(name));
}

}  // namespace ipa
