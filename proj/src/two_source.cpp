#include "rso/two_source.hpp"

#include <string>

#include "rso/error.hpp"

namespace rso {

int TwoSourceFunction::row_weight(int x) const {
  int w = 0;
  for (int y = 0; y < n2; ++y) w += (*this)(x, y);
  return w;
}

int TwoSourceFunction::col_weight(int y) const {
  int w = 0;
  for (int x = 0; x < n1; ++x) w += (*this)(x, y);
  return w;
}

TwoSourceFunction TwoSourceFunction::transposed() const {
  TwoSourceFunction t(n2, n1);
  for (int x = 0; x < n1; ++x)
    for (int y = 0; y < n2; ++y) t.set(y, x, (*this)(x, y));
  return t;
}

TwoSourceFunction TwoSourceFunction::restrict(const std::vector<int>& rows, const std::vector<int>& cols) const {
  TwoSourceFunction t(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (rows[i] < 0 || rows[i] >= n1 || cols[j] < 0 || cols[j] >= n2)
        throw ValidationError("two-source restrict: index out of range");
      t.set(static_cast<int>(i), static_cast<int>(j), (*this)(rows[i], cols[j]));
    }
  return t;
}

namespace {

Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw ParseError("two-source table: bad rational \"" + s + "\"");
  }
}

}  // namespace

nlohmann::json to_json(const TwoSourceFunction& f) {
  nlohmann::json j;
  j["rows"] = f.n1;
  j["cols"] = f.n2;
  auto bits = nlohmann::json::array();
  for (int x = 0; x < f.n1; ++x) {
    std::string row(f.n2, '0');
    for (int y = 0; y < f.n2; ++y) row[y] = f(x, y) ? '1' : '0';
    bits.push_back(row);
  }
  j["bits"] = std::move(bits);
  if (f.eps_qo) j["eps_qo"] = to_string(*f.eps_qo);
  if (f.eps_nm) j["eps_nm"] = to_string(*f.eps_nm);
  if (!f.nm_mode.empty()) j["nm_mode"] = f.nm_mode;
  if (f.nm_seed) j["nm_seed"] = *f.nm_seed;
  if (f.k) j["k"] = *f.k;
  return j;
}

TwoSourceFunction two_source_from_json(const nlohmann::json& j) {
  try {
    TwoSourceFunction f(j.at("rows").get<int>(), j.at("cols").get<int>());
    if (f.n1 < 0 || f.n2 < 0) throw ParseError("two-source table: negative size");
    const auto& bits = j.at("bits");
    if (static_cast<int>(bits.size()) != f.n1) throw ParseError("two-source table: wrong number of rows");
    for (int x = 0; x < f.n1; ++x) {
      const auto row = bits[x].get<std::string>();
      if (static_cast<int>(row.size()) != f.n2)
        throw ParseError("two-source table: row " + std::to_string(x + 1) + " has the wrong length");
      for (int y = 0; y < f.n2; ++y) {
        if (row[y] != '0' && row[y] != '1')
          throw ParseError("two-source table: row " + std::to_string(x + 1) + " has a character other than 0/1");
        f.set(x, y, row[y] == '1');
      }
    }
    if (j.contains("eps_qo")) f.eps_qo = parse_rational(j["eps_qo"].get<std::string>());
    if (j.contains("eps_nm")) f.eps_nm = parse_rational(j["eps_nm"].get<std::string>());
    f.nm_mode = j.value("nm_mode", std::string());
    if (j.contains("nm_seed")) f.nm_seed = j["nm_seed"].get<std::uint64_t>();
    if (j.contains("k")) f.k = j["k"].get<double>();
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("two-source table: ") + e.what());
  }
}

}  // namespace rso
