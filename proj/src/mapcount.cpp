#include "arbor/mapcount.hpp"

#include "arbor/errors.hpp"

#include <functional>
#include <stdexcept>

namespace arbor {

MapInstance::MapInstance(Permutation theta_, Coloring gamma_) : theta(std::move(theta_)), gamma(std::move(gamma_))
{
  if (theta.size() != gamma.size())
    throw std::invalid_argument("theta acts on " + std::to_string(theta.size()) + " points but gamma has " +
                                std::to_string(gamma.size()));
}

void for_each_map(const MapInstance& inst, const std::function<void(const Matching&)>& visit)
{
  for_each_matching(inst.n(), [&](const Matching& iota) {
    for (int x = 0; x < inst.n(); ++x)
      if (inst.gamma(iota(x)) != inst.gamma(x))
        return;
    if (is_transitive_pair(inst.theta, iota.permutation()))
      visit(iota);
  });
}

std::vector<Matching> enumerate_maps(const MapInstance& inst)
{
  std::vector<Matching> out;
  for_each_map(inst, [&](const Matching& m) { out.push_back(m); });
  return out;
}

int genus(const Permutation& theta, const Matching& iota)
{
  if (!is_transitive_pair(theta, iota.permutation()))
    throw std::invalid_argument("genus: theta and iota do not act transitively");
  const int n = theta.size();
  const int twice = 2 + n - theta.cycle_count() - n / 2 - compose(theta, iota.permutation()).cycle_count();
  if (twice < 0 || twice % 2 != 0)
    throw std::logic_error("genus: Riemann-Hurwitz count is not a nonnegative even integer");
  return twice / 2;
}

MapCountReport count_map0(const MapInstance& inst)
{
  MapCountReport report;
  for_each_map(inst, [&](const Matching& iota) {
    int g = genus(inst.theta, iota);
    ++report.total;
    ++report.genus_histogram[g];
    if (g == 0)
      ++report.planar;
  });
  return report;
}

Rational kahuna_bound(const Permutation& theta)
{
  const int n = theta.size();
  const int k = theta.cycle_count();
  if (n < 2 * k - 2)
    return 0;
  Rational p = 1;
  for (const auto& c : theta.cycles())
    p *= static_cast<long>(c.size());
  // k = 1 gives n^(-1).
  Rational n_pow = k >= 2 ? pow(Rational(n), static_cast<unsigned>(k - 2)) : Rational(1, n);
  return p * n_pow * pow(Rational(2), static_cast<unsigned>(n - 2 * k + 2));
}

BoundCheck check_kahuna_bound(const MapInstance& inst)
{
  if (!inst.gamma.is_constant())
    throw std::invalid_argument("the planar map bound is stated for monochrome colorings");
  BoundCheck c;
  c.lhs = count_map0(inst).planar;
  c.rhs = kahuna_bound(inst.theta);
  c.holds = c.lhs <= c.rhs;
  return c;
}

Permutation permutation_with_cycle_lengths(const std::vector<int>& lengths)
{
  std::vector<int> im;
  int start = 0;
  for (int len : lengths) {
    if (len < 1)
      throw std::invalid_argument("cycle lengths must be positive");
    for (int i = 0; i < len; ++i)
      im.push_back(start + (i + 1) % len);
    start += len;
  }
  return Permutation(std::move(im));
}

std::vector<GeneratingRow> generating_table(const std::vector<int>& shape, const std::vector<int>& max_orders,
                                            int degree_cap)
{
  if (shape.size() != max_orders.size())
    throw std::invalid_argument("generating_table: shape and max_orders differ in length");
  std::vector<GeneratingRow> rows;
  if (shape.empty())
    return rows;
  int worst = 0;
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (shape[i] < 1 || max_orders[i] < 1)
      throw std::invalid_argument("generating_table: lengths and orders must be positive");
    worst += shape[i] * max_orders[i];
  }
  if (worst > degree_cap)
    throw CapExceeded("generating table reaches degree " + std::to_string(worst) + " > cap " +
                      std::to_string(degree_cap) + "; lower the orders or raise the degree cap");

  std::vector<int> orders(shape.size(), 1);
  for (;;) {
    std::vector<int> lengths;
    int stars = 0;
    for (std::size_t i = 0; i < shape.size(); ++i) {
      stars += orders[i];
      for (int r = 0; r < orders[i]; ++r)
        lengths.push_back(shape[i]);
    }
    GeneratingRow row;
    row.orders = orders;
    Permutation theta = permutation_with_cycle_lengths(lengths);
    row.degree = theta.size();
    row.planar = count_map0(MapInstance(theta, Coloring::constant(row.degree))).planar;
    Rational denom = 1;
    Rational weight = 1;
    for (std::size_t i = 0; i < shape.size(); ++i) {
      denom *= Rational(factorial(static_cast<unsigned>(orders[i])));
      weight *= pow(Rational(shape[i]) * pow(Rational(2), static_cast<unsigned>(shape[i])),
                    static_cast<unsigned>(orders[i]));
    }
    row.coefficient = Rational(row.planar) / denom;
    row.majorant = pow(Rational(row.degree), static_cast<unsigned>(stars)) * weight / denom;
    row.below_majorant = row.coefficient <= row.majorant;
    rows.push_back(std::move(row));

    std::size_t i = 0;
    while (i < orders.size() && orders[i] == max_orders[i])
      orders[i++] = 1;
    if (i == orders.size())
      break;
    ++orders[i];
  }
  return rows;
}

} // namespace arbor
