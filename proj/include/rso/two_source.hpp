#ifndef RSO_TWO_SOURCE_HPP
#define RSO_TWO_SOURCE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rso/rational.hpp"

namespace rso {

// Boolean function on [N1] x [N2], stored row-major. Indices are 0-based in
// code; row x stands for the element x+1 of [N1].
struct TwoSourceFunction {
  int n1 = 0, n2 = 0;
  std::vector<std::uint8_t> table;

  // Measured properties, filled in by whoever measured them.
  std::optional<Rational> eps_qo;
  std::optional<Rational> eps_nm;
  std::string nm_mode;
  std::optional<std::uint64_t> nm_seed;
  std::optional<double> k;

  TwoSourceFunction() = default;
  TwoSourceFunction(int rows, int cols) : n1(rows), n2(cols), table(static_cast<std::size_t>(rows) * cols, 0) {}

  int operator()(int x, int y) const { return table[static_cast<std::size_t>(x) * n2 + y]; }
  void set(int x, int y, int bit) { table[static_cast<std::size_t>(x) * n2 + y] = bit ? 1 : 0; }
  int row_weight(int x) const;
  int col_weight(int y) const;
  TwoSourceFunction transposed() const;
  // Table restricted to the listed rows and columns (in the given order).
  TwoSourceFunction restrict(const std::vector<int>& rows, const std::vector<int>& cols) const;
};

// {"rows", "cols", "bits": ["0110...", ...] one string per row, plus whichever
// measured fields are set}. Rationals are written as "p/q" strings.
nlohmann::json to_json(const TwoSourceFunction& f);
TwoSourceFunction two_source_from_json(const nlohmann::json& j);

}  // namespace rso

#endif
