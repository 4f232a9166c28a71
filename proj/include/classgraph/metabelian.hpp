#pragma once

// Split extensions K x| L of abelian groups where every element of L acts on
// each cyclic factor of K by multiplication with a unit. Frobenius groups of
// squarefree order and their direct products are all of this form.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "classgraph/error.hpp"
#include "classgraph/number_theory.hpp"
#include "classgraph/perm_group.hpp"
#include "classgraph/spectrum.hpp"

namespace classgraph {

inline constexpr std::uint64_t kDefaultSpectrumCap = 10'000'000;

struct AbelianGroup {
  std::vector<std::uint64_t> factor_orders;

  std::uint64_t order() const {
    std::uint64_t n = 1;
    for (auto f : factor_orders) n *= f;
    return n;
  }
  std::size_t rank() const { return factor_orders.size(); }

  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;
};

/// multipliers[i][j] is the unit by which top generator i multiplies kernel
/// factor j.
struct MultiplierAction {
  std::vector<std::vector<std::uint64_t>> multipliers;

  friend bool operator==(const MultiplierAction&, const MultiplierAction&) = default;
};

/// Element as residue tuples: (kernel part, top part).
struct MetaElement {
  std::vector<std::uint64_t> kernel;
  std::vector<std::uint64_t> top;

  friend bool operator==(const MetaElement&, const MetaElement&) = default;
  friend auto operator<=>(const MetaElement&, const MetaElement&) = default;
};

class MetabelianGroup {
 public:
  MetabelianGroup(AbelianGroup kernel, AbelianGroup top, MultiplierAction action)
      : kernel_(std::move(kernel)), top_(std::move(top)), action_(std::move(action)) {
    validate();
  }

  static MetabelianGroup abelian(std::vector<std::uint64_t> orders) {
    MultiplierAction trivial{std::vector<std::vector<std::uint64_t>>(orders.size())};
    return MetabelianGroup(AbelianGroup{}, AbelianGroup{std::move(orders)}, std::move(trivial));
  }

  const AbelianGroup& kernel() const { return kernel_; }
  const AbelianGroup& top() const { return top_; }
  const MultiplierAction& action() const { return action_; }
  std::uint64_t multiplier(std::size_t top_gen, std::size_t kernel_factor) const {
    return action_.multipliers[top_gen][kernel_factor];
  }

  std::uint64_t order() const { return order_; }
  bool is_coprime() const { return std::gcd(kernel_.order(), top_.order()) == 1; }
  bool has_trivial_action() const {
    for (const auto& row : action_.multipliers) {
      for (auto u : row) {
        if (u != 1) return false;
      }
    }
    return true;
  }

  /// Direct factors this group was folded from, if any. The spectrum of a
  /// folded product is the product of the factor spectra.
  const std::vector<MetabelianGroup>& factors() const { return factors_; }
  void set_factors(std::vector<MetabelianGroup> factors) { factors_ = std::move(factors); }

  MetaElement identity() const {
    return MetaElement{std::vector<std::uint64_t>(kernel_.rank(), 0), std::vector<std::uint64_t>(top_.rank(), 0)};
  }

  MetaElement kernel_generator(std::size_t j) const {
    auto e = identity();
    e.kernel.at(j) = 1 % kernel_.factor_orders[j];
    return e;
  }

  MetaElement top_generator(std::size_t i) const {
    auto e = identity();
    e.top.at(i) = 1 % top_.factor_orders[i];
    return e;
  }

  /// Per kernel factor, the unit by which the top element `l` acts.
  std::vector<std::uint64_t> multipliers_of(const std::vector<std::uint64_t>& l) const {
    std::vector<std::uint64_t> out(kernel_.rank(), 1);
    for (std::size_t j = 0; j < kernel_.rank(); ++j) {
      const auto n = kernel_.factor_orders[j];
      std::uint64_t u = 1 % n;
      for (std::size_t i = 0; i < top_.rank(); ++i) u = nt::mul_mod(u, nt::pow_mod(multiplier(i, j), l[i], n), n);
      out[j] = u;
    }
    return out;
  }

  /// (k1, l1)(k2, l2) = (k1 + phi_{l1}(k2), l1 + l2)
  MetaElement multiply(const MetaElement& a, const MetaElement& b) const {
    MetaElement out = identity();
    auto u = multipliers_of(a.top);
    for (std::size_t j = 0; j < kernel_.rank(); ++j) {
      const auto n = kernel_.factor_orders[j];
      out.kernel[j] = (a.kernel[j] + nt::mul_mod(u[j], b.kernel[j], n)) % n;
    }
    for (std::size_t i = 0; i < top_.rank(); ++i) out.top[i] = (a.top[i] + b.top[i]) % top_.factor_orders[i];
    return out;
  }

  /// (k, l)^-1 = (-phi_{-l}(k), -l)
  MetaElement inverse(const MetaElement& a) const {
    MetaElement out = identity();
    for (std::size_t i = 0; i < top_.rank(); ++i) {
      const auto m = top_.factor_orders[i];
      out.top[i] = (m - a.top[i]) % m;
    }
    auto u = multipliers_of(out.top);
    for (std::size_t j = 0; j < kernel_.rank(); ++j) {
      const auto n = kernel_.factor_orders[j];
      out.kernel[j] = (n - nt::mul_mod(u[j], a.kernel[j], n)) % n;
    }
    return out;
  }

  /// by * x * by^-1
  MetaElement conjugate(const MetaElement& x, const MetaElement& by) const {
    return multiply(multiply(by, x), inverse(by));
  }

  /// Mixed-radix index: kernel digits first (least significant), then top.
  std::uint64_t encode(const MetaElement& e) const {
    std::uint64_t idx = 0;
    std::uint64_t scale = 1;
    for (std::size_t j = 0; j < kernel_.rank(); ++j) {
      idx += e.kernel[j] * scale;
      scale *= kernel_.factor_orders[j];
    }
    for (std::size_t i = 0; i < top_.rank(); ++i) {
      idx += e.top[i] * scale;
      scale *= top_.factor_orders[i];
    }
    return idx;
  }

  MetaElement decode(std::uint64_t idx) const {
    MetaElement e = identity();
    for (std::size_t j = 0; j < kernel_.rank(); ++j) {
      e.kernel[j] = idx % kernel_.factor_orders[j];
      idx /= kernel_.factor_orders[j];
    }
    for (std::size_t i = 0; i < top_.rank(); ++i) {
      e.top[i] = idx % top_.factor_orders[i];
      idx /= top_.factor_orders[i];
    }
    return e;
  }

  bool is_valid_element(const MetaElement& e) const {
    if (e.kernel.size() != kernel_.rank() || e.top.size() != top_.rank()) return false;
    for (std::size_t j = 0; j < kernel_.rank(); ++j) {
      if (e.kernel[j] >= kernel_.factor_orders[j]) return false;
    }
    for (std::size_t i = 0; i < top_.rank(); ++i) {
      if (e.top[i] >= top_.factor_orders[i]) return false;
    }
    return true;
  }

  friend bool operator==(const MetabelianGroup& a, const MetabelianGroup& b) {
    return a.kernel_ == b.kernel_ && a.top_ == b.top_ && a.action_ == b.action_;
  }

 private:
  void validate() {
    auto check_orders = [](const AbelianGroup& g, const char* what) {
      for (auto n : g.factor_orders) {
        if (n < 2) throw Error(ErrorKind::InvalidExpression, std::string(what) + " factor orders must be at least 2");
      }
    };
    check_orders(kernel_, "kernel");
    check_orders(top_, "top");
    if (action_.multipliers.size() != top_.rank()) {
      throw Error(ErrorKind::InvalidMultiplier, "need one multiplier row per top generator");
    }
    for (std::size_t i = 0; i < top_.rank(); ++i) {
      auto& row = action_.multipliers[i];
      if (row.size() != kernel_.rank()) {
        throw Error(ErrorKind::InvalidMultiplier, "multiplier row " + std::to_string(i) + " has " +
                                                      std::to_string(row.size()) + " entries, expected " +
                                                      std::to_string(kernel_.rank()));
      }
      for (std::size_t j = 0; j < kernel_.rank(); ++j) {
        const auto n = kernel_.factor_orders[j];
        row[j] %= n;
        if (std::gcd(row[j], n) != 1) {
          throw Error(ErrorKind::InvalidMultiplier,
                      std::to_string(row[j]) + " is not a unit modulo " + std::to_string(n));
        }
        if (nt::pow_mod(row[j], top_.factor_orders[i], n) != 1 % n) {
          throw Error(ErrorKind::InvalidMultiplier,
                      std::to_string(row[j]) + " has multiplicative order " +
                          std::to_string(nt::multiplicative_order(row[j], n)) + " modulo " + std::to_string(n) +
                          ", which does not divide " + std::to_string(top_.factor_orders[i]));
        }
      }
    }
    order_ = 1;
    for (const auto* g : {&kernel_, &top_}) {
      for (auto n : g->factor_orders) {
        if (__builtin_mul_overflow(order_, n, &order_)) {
          throw Error(ErrorKind::InvalidExpression, "group order does not fit in 64 bits");
        }
      }
    }
  }

  AbelianGroup kernel_;
  AbelianGroup top_;
  MultiplierAction action_;
  std::vector<MetabelianGroup> factors_;
  std::uint64_t order_ = 1;
};

/// Calls fn(top_element, multipliers) for every element of the top group,
/// maintaining the per-kernel-factor multipliers incrementally.
template <typename Fn>
void for_each_top_element(const MetabelianGroup& g, Fn&& fn, std::uint64_t cap = kDefaultSpectrumCap) {
  if (g.top().order() > cap) {
    throw Error(ErrorKind::CapExceeded, "top group of order " + std::to_string(g.top().order()) +
                                            " exceeds the cap of " + std::to_string(cap));
  }
  const auto& top = g.top().factor_orders;
  const auto& kern = g.kernel().factor_orders;
  std::vector<std::uint64_t> digits(top.size(), 0);
  std::vector<std::uint64_t> mult(kern.size());
  for (std::size_t j = 0; j < kern.size(); ++j) mult[j] = 1 % kern[j];
  for (;;) {
    fn(static_cast<const std::vector<std::uint64_t>&>(digits), static_cast<const std::vector<std::uint64_t>&>(mult));
    std::size_t i = 0;
    for (; i < top.size(); ++i) {
      for (std::size_t j = 0; j < kern.size(); ++j) mult[j] = nt::mul_mod(mult[j], g.multiplier(i, j), kern[j]);
      if (++digits[i] < top[i]) break;
      digits[i] = 0;  // u^{order} = 1, so the multipliers are already right
    }
    if (i == top.size()) return;
  }
}

/// Every nontrivial top element fixes only the zero kernel element.
inline bool is_frobenius_action(const MetabelianGroup& g) {
  bool frobenius = true;
  bool first = true;
  const auto& kern = g.kernel().factor_orders;
  for_each_top_element(g, [&](const std::vector<std::uint64_t>&, const std::vector<std::uint64_t>& mult) {
    if (first) {
      first = false;
      return;
    }
    if (!frobenius) return;
    // Fixed points of x -> u x on Z_n number gcd(u - 1, n).
    std::uint64_t fixed = 1;
    for (std::size_t j = 0; j < kern.size(); ++j) fixed *= std::gcd((mult[j] + kern[j] - 1) % kern[j], kern[j]);
    if (fixed != 1) frobenius = false;
  });
  return frobenius;
}

/// Order of the center: C_K(L) times the kernel of the action.
inline std::uint64_t center_order(const MetabelianGroup& g) {
  std::uint64_t fixed = 1;
  for (std::size_t j = 0; j < g.kernel().rank(); ++j) {
    const auto n = g.kernel().factor_orders[j];
    // Subgroups of a cyclic group intersect in the subgroup of gcd order.
    std::uint64_t common = n;
    for (std::size_t i = 0; i < g.top().rank(); ++i) common = std::gcd(common, std::gcd((g.multiplier(i, j) + n - 1) % n, n));
    fixed *= common;
  }
  std::uint64_t trivial = 0;
  for_each_top_element(g, [&](const std::vector<std::uint64_t>&, const std::vector<std::uint64_t>& mult) {
    bool acts = false;
    for (auto u : mult) acts = acts || u != 1;
    if (!acts) ++trivial;
  });
  return fixed * trivial;
}

namespace detail {

/// Conjugation-orbit partition of all elements; returns class sizes.
inline Spectrum orbit_partition_spectrum(const MetabelianGroup& g, std::uint64_t cap) {
  if (g.order() > cap) {
    throw Error(ErrorKind::CapExceeded, "group of order " + std::to_string(g.order()) +
                                            " exceeds the spectrum cap of " + std::to_string(cap) +
                                            " and no structured fast path applies");
  }
  const auto& kern = g.kernel().factor_orders;
  const auto& top = g.top().factor_orders;
  const std::uint64_t kernel_order = g.kernel().order();
  const std::uint64_t top_order = g.top().order();

  // mult_table[l * rank + j]: multiplier of top element with index l on factor j.
  std::vector<std::uint64_t> mult_table(top_order * kern.size());
  {
    std::uint64_t l = 0;
    for_each_top_element(
        g,
        [&](const std::vector<std::uint64_t>&, const std::vector<std::uint64_t>& mult) {
          std::copy(mult.begin(), mult.end(), mult_table.begin() + static_cast<std::ptrdiff_t>(l * kern.size()));
          ++l;
        },
        cap);
  }
  std::vector<std::uint64_t> kernel_scale(kern.size());
  std::uint64_t scale = 1;
  for (std::size_t j = 0; j < kern.size(); ++j) {
    kernel_scale[j] = scale;
    scale *= kern[j];
  }

  constexpr auto kUnset = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> seen(g.order(), kUnset);
  std::vector<std::uint64_t> queue;
  Spectrum out;
  std::uint32_t next_id = 0;
  for (std::uint64_t start = 0; start < g.order(); ++start) {
    if (seen[start] != kUnset) continue;
    queue.assign(1, start);
    seen[start] = next_id;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::uint64_t x = queue[head];
      const std::uint64_t k_idx = x % kernel_order;
      const std::uint64_t l_idx = x / kernel_order;
      const std::uint64_t* mult = mult_table.data() + l_idx * kern.size();
      // Conjugating by a kernel generator e_j: k_j -> k_j + 1 - phi_l(1).
      for (std::size_t j = 0; j < kern.size(); ++j) {
        const std::uint64_t digit = (k_idx / kernel_scale[j]) % kern[j];
        const std::uint64_t shifted = (digit + 1 + kern[j] - mult[j]) % kern[j];
        const std::uint64_t y = x - digit * kernel_scale[j] + shifted * kernel_scale[j];
        if (seen[y] == kUnset) {
          seen[y] = next_id;
          queue.push_back(y);
        }
      }
      // Conjugating by a top generator f_i: k_j -> u_ij k_j, top unchanged.
      for (std::size_t i = 0; i < top.size(); ++i) {
        std::uint64_t k_new = 0;
        for (std::size_t j = 0; j < kern.size(); ++j) {
          const std::uint64_t digit = (k_idx / kernel_scale[j]) % kern[j];
          k_new += nt::mul_mod(digit, g.multiplier(i, j), kern[j]) * kernel_scale[j];
        }
        const std::uint64_t y = l_idx * kernel_order + k_new;
        if (seen[y] == kUnset) {
          seen[y] = next_id;
          queue.push_back(y);
        }
      }
    }
    ++out[queue.size()];
    ++next_id;
  }
  return out;
}

}  // namespace detail

/// Class-size multiset. Folded direct products use the product of factor
/// spectra; a Frobenius action gives the closed form
/// {1} + {|L| x (|K|-1)/|L|} + {|K| x (|L|-1)}; anything else falls back to
/// the orbit partition of all elements.
inline Spectrum class_size_spectrum(const MetabelianGroup& g, std::uint64_t cap = kDefaultSpectrumCap) {
  Spectrum out;
  if (!g.factors().empty()) {
    out[1] = 1;
    for (const auto& f : g.factors()) out = spectrum_product(out, class_size_spectrum(f, cap));
  } else if (g.top().order() <= cap && is_frobenius_action(g)) {
    const std::uint64_t k = g.kernel().order();
    const std::uint64_t l = g.top().order();
    out[1] += 1;
    if (k > 1) out[l] += (k - 1) / l;
    if (l > 1) out[k] += l - 1;
  } else {
    out = detail::orbit_partition_spectrum(g, cap);
  }
  if (spectrum_total(out) != g.order()) {
    throw Error(ErrorKind::InvariantViolation, "class sizes sum to " + std::to_string(spectrum_total(out)) +
                                                   " but the group has order " + std::to_string(g.order()));
  }
  return out;
}

/// Size of the conjugacy class of x. Kernel elements use |L : Stab_L(k)|
/// since the abelian kernel centralizes itself; other elements use the
/// conjugation orbit under the standard generators.
inline std::uint64_t class_size(const MetabelianGroup& g, const MetaElement& x,
                                std::uint64_t cap = kDefaultSpectrumCap) {
  if (!g.is_valid_element(x)) throw Error(ErrorKind::ElementNotInGroup, "element tuple out of range");
  const auto& kern = g.kernel().factor_orders;
  const bool in_kernel = std::all_of(x.top.begin(), x.top.end(), [](auto v) { return v == 0; });
  if (in_kernel) {
    std::uint64_t stabilizer = 0;
    for_each_top_element(
        g,
        [&](const std::vector<std::uint64_t>&, const std::vector<std::uint64_t>& mult) {
          bool fixes = true;
          for (std::size_t j = 0; j < kern.size() && fixes; ++j) fixes = nt::mul_mod(mult[j], x.kernel[j], kern[j]) == x.kernel[j];
          if (fixes) ++stabilizer;
        },
        cap);
    return g.top().order() / stabilizer;
  }
  std::vector<MetaElement> gens;
  for (std::size_t j = 0; j < g.kernel().rank(); ++j) gens.push_back(g.kernel_generator(j));
  for (std::size_t i = 0; i < g.top().rank(); ++i) gens.push_back(g.top_generator(i));
  std::vector<MetaElement> orbit{x};
  std::set<MetaElement> seen{x};
  for (std::size_t head = 0; head < orbit.size(); ++head) {
    for (const auto& s : gens) {
      auto y = g.conjugate(orbit[head], s);
      if (seen.insert(y).second) {
        if (orbit.size() >= cap) throw Error(ErrorKind::CapExceeded, "conjugacy class exceeds the cap");
        orbit.push_back(std::move(y));
      }
    }
  }
  return orbit.size();
}

/// Faithful permutation representation. Points are one block per cyclic
/// factor of K followed by one block per cyclic factor of L. A kernel
/// generator translates its own block; a top generator multiplies every
/// kernel block by its multiplier and translates its own top block. The
/// element (k, l) then acts on the kernel blocks as x -> k + phi_l(x), which
/// composes exactly like the multiplication law, and l can be read off the
/// top blocks, so the action is faithful. The order is re-checked anyway.
inline PermGroup to_permutation(const MetabelianGroup& g, std::size_t cap = kDefaultEnumerationCap) {
  const auto& kern = g.kernel().factor_orders;
  const auto& top = g.top().factor_orders;
  std::vector<std::size_t> kernel_offset;
  std::vector<std::size_t> top_offset;
  std::size_t degree = 0;
  for (auto n : kern) {
    kernel_offset.push_back(degree);
    degree += n;
  }
  for (auto m : top) {
    top_offset.push_back(degree);
    degree += m;
  }
  const std::size_t actual_degree = std::max<std::size_t>(degree, 1);

  std::vector<Permutation> gens;
  for (std::size_t j = 0; j < kern.size(); ++j) {
    std::vector<Point> images(actual_degree);
    std::iota(images.begin(), images.end(), Point{0});
    for (std::uint64_t x = 0; x < kern[j]; ++x) {
      images[kernel_offset[j] + x] = static_cast<Point>(kernel_offset[j] + (x + 1) % kern[j]);
    }
    gens.emplace_back(std::move(images));
  }
  for (std::size_t i = 0; i < top.size(); ++i) {
    std::vector<Point> images(actual_degree);
    std::iota(images.begin(), images.end(), Point{0});
    for (std::size_t j = 0; j < kern.size(); ++j) {
      for (std::uint64_t x = 0; x < kern[j]; ++x) {
        images[kernel_offset[j] + x] = static_cast<Point>(kernel_offset[j] + nt::mul_mod(g.multiplier(i, j), x, kern[j]));
      }
    }
    for (std::uint64_t x = 0; x < top[i]; ++x) {
      images[top_offset[i] + x] = static_cast<Point>(top_offset[i] + (x + 1) % top[i]);
    }
    gens.emplace_back(std::move(images));
  }
  PermGroup out(actual_degree, std::move(gens));
  out.enumerate(cap);
  if (out.order() != g.order()) {
    throw Error(ErrorKind::FaithfulnessFailure, "permutation image has order " + std::to_string(out.order()) +
                                                    ", expected " + std::to_string(g.order()));
  }
  return out;
}

/// Isomorphic rewrite with every cyclic factor split into its prime-power
/// components. A top factor Z_m splits along the generators (m / q) f for
/// q | m, which act by u^{m/q}; a kernel factor Z_n splits along
/// (n / q) Z_n, on which u acts as u mod q.
inline MetabelianGroup primary_form(const MetabelianGroup& g) {
  struct KernelComp {
    std::size_t source;
    std::uint64_t order;
  };
  std::vector<KernelComp> kcomps;
  for (std::size_t j = 0; j < g.kernel().rank(); ++j) {
    const auto n = g.kernel().factor_orders[j];
    for (const auto& [p, e] : nt::factorize(n)) kcomps.push_back({j, nt::p_part(n, p)});
  }
  AbelianGroup kernel;
  for (const auto& c : kcomps) kernel.factor_orders.push_back(c.order);
  AbelianGroup top;
  MultiplierAction action;
  for (std::size_t i = 0; i < g.top().rank(); ++i) {
    const auto m = g.top().factor_orders[i];
    for (const auto& [p, e] : nt::factorize(m)) {
      const auto q = nt::p_part(m, p);
      top.factor_orders.push_back(q);
      std::vector<std::uint64_t> row;
      for (const auto& c : kcomps) row.push_back(nt::pow_mod(g.multiplier(i, c.source), m / q, c.order));
      action.multipliers.push_back(std::move(row));
    }
  }
  return MetabelianGroup(std::move(kernel), std::move(top), std::move(action));
}

inline Prime component_prime(std::uint64_t prime_power) { return nt::factorize(prime_power).begin()->first; }

/// Hall subgroup for the primes in `primes`: the matching primary
/// components of K and L with the induced action.
inline MetabelianGroup hall_part(const MetabelianGroup& g, const PrimeSet& primes) {
  const auto p = primary_form(g);
  std::vector<std::size_t> keep_k;
  std::vector<std::size_t> keep_t;
  for (std::size_t j = 0; j < p.kernel().rank(); ++j) {
    if (primes.count(component_prime(p.kernel().factor_orders[j])) != 0) keep_k.push_back(j);
  }
  for (std::size_t i = 0; i < p.top().rank(); ++i) {
    if (primes.count(component_prime(p.top().factor_orders[i])) != 0) keep_t.push_back(i);
  }
  AbelianGroup kernel;
  AbelianGroup top;
  MultiplierAction action;
  for (auto j : keep_k) kernel.factor_orders.push_back(p.kernel().factor_orders[j]);
  for (auto i : keep_t) {
    top.factor_orders.push_back(p.top().factor_orders[i]);
    std::vector<std::uint64_t> row;
    for (auto j : keep_k) row.push_back(p.multiplier(i, j));
    action.multipliers.push_back(std::move(row));
  }
  return MetabelianGroup(std::move(kernel), std::move(top), std::move(action));
}

/// In a coprime group the Hall part for `primes` is normal iff its top part
/// centralizes the kernel components outside `primes`.
inline bool hall_part_is_normal(const MetabelianGroup& g, const PrimeSet& primes) {
  const auto p = primary_form(g);
  for (std::size_t i = 0; i < p.top().rank(); ++i) {
    if (primes.count(component_prime(p.top().factor_orders[i])) == 0) continue;
    for (std::size_t j = 0; j < p.kernel().rank(); ++j) {
      if (primes.count(component_prime(p.kernel().factor_orders[j])) != 0) continue;
      if (p.multiplier(i, j) != 1) return false;
    }
  }
  return true;
}

/// nu_p(|Z(G)|) == nu_p(|G|), computed from the action data.
inline bool sylow_is_central(const MetabelianGroup& g, Prime p) {
  return nt::valuation(center_order(g), p) == nt::valuation(g.order(), p);
}

}  // namespace classgraph
