#include "xorrep/additive.hpp"

#include <map>

namespace xorrep {

void FunctionOnGroupBox::validate() const {
  if (modulus < 1) throw InputError("value modulus must be positive");
  if (domain.size() != values.size()) throw InputError("domain and value counts differ");
  for (std::size_t i = 0; i < domain.size(); ++i) {
    if (!group.contains(domain[i]))
      throw InputError("domain element " + element_to_string(domain[i]) + " not in " +
                       group.describe());
    if (values[i] < 0 || values[i] >= modulus) throw InputError("value out of range");
  }
}

namespace {

Int binomial(std::uint64_t n, std::uint64_t k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace

FreimanResult freiman_check(const FunctionOnGroupBox& f, int s, std::uint64_t budget) {
  f.validate();
  if (s < 1) throw InputError("Freiman order must be positive");
  FreimanResult res;
  const std::size_t n = f.domain.size();
  if (n == 0) return res;
  if (binomial(n + s - 1, s) > Int(static_cast<unsigned long>(budget)))
    throw CapacityError("Freiman check exceeds the multiset budget");

  // First multiset seen for every element sum, with its image sum.
  std::map<GroupElement, std::pair<std::int64_t, std::vector<std::size_t>>> seen;
  std::vector<std::size_t> idx(s, 0);
  for (;;) {
    GroupElement sum = f.group.zero();
    std::int64_t image = 0;
    for (std::size_t i : idx) {
      sum = f.group.add(sum, f.domain[i]);
      image = (image + f.values[i]) % f.modulus;
    }
    ++res.multisets;
    auto [it, fresh] = seen.try_emplace(sum, image, idx);
    if (!fresh && it->second.first != image) {
      res.holds = false;
      res.witness = std::make_pair(it->second.second, idx);
      return res;
    }
    // Next non-decreasing index tuple.
    int pos = s - 1;
    while (pos >= 0 && idx[pos] == n - 1) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int i = pos + 1; i < s; ++i) idx[i] = idx[pos];
  }
  return res;
}

std::int64_t evaluate(const AffineForm& form, const GroupElement& x, std::int64_t p) {
  if (x.size() != form.coeffs.size()) throw InputError("affine form arity mismatch");
  __int128 acc = form.constant;
  for (std::size_t i = 0; i < x.size(); ++i) acc += static_cast<__int128>(form.coeffs[i]) * x[i];
  return mod_floor(static_cast<std::int64_t>(acc % p), p);
}

std::optional<AffineForm> affine_form_extract(
    const FiniteAbelianGroup& group, const std::vector<std::pair<GroupElement, std::int64_t>>& points,
    std::int64_t p, const std::vector<bool>& forced_zero) {
  const std::size_t L = group.arity();
  if (!forced_zero.empty() && forced_zero.size() != L)
    throw InputError("vanishing mask length does not match the group");
  std::size_t forced = 0;
  for (bool b : forced_zero) forced += b;
  IntegerMatrix m(points.size() + forced, L + 1);
  IntVector rhs(points.size() + forced, Int(0));
  for (std::size_t r = 0; r < points.size(); ++r) {
    group.check_element(points[r].first);
    m(r, 0) = 1;
    for (std::size_t i = 0; i < L; ++i) m(r, i + 1) = static_cast<long>(points[r].first[i]);
    rhs[r] = static_cast<long>(mod_floor(points[r].second, p));
  }
  std::size_t row = points.size();
  for (std::size_t i = 0; i < forced_zero.size(); ++i)
    if (forced_zero[i]) m(row++, i + 1) = 1;
  ModularSolutionSet sols = solve_mod_q(m, rhs, p);
  if (!sols.consistent()) return std::nullopt;
  std::vector<std::int64_t> v;
  try {
    v = sols.first();
  } catch (const CapacityError&) {
    v = sols.particular();
  }
  AffineForm form;
  form.constant = v[0];
  form.coeffs.assign(v.begin() + 1, v.end());
  return form;
}

std::optional<AffineForm> affine_form_extract(const FiniteAbelianGroup& group,
                                              const std::vector<std::int64_t>& values,
                                              std::int64_t p) {
  auto elems = all_elements(group);
  if (elems.size() != values.size()) throw InputError("value table does not cover the group");
  std::vector<std::pair<GroupElement, std::int64_t>> pts;
  for (std::size_t i = 0; i < elems.size(); ++i) pts.emplace_back(elems[i], values[i]);
  return affine_form_extract(group, pts, p);
}

std::vector<bool> vanishing_coefficients(const FiniteAbelianGroup& group, std::int64_t p, int k,
                                         int j) {
  std::vector<bool> out;
  for (std::int64_t q : group.factors()) {
    std::int64_t pi = 0;
    int ki = 0;
    if (!is_prime_power(q, &pi, &ki))
      throw InputError("group factor " + std::to_string(q) + " is not a prime power");
    out.push_back(pi != p || ki < k + j);
  }
  return out;
}

bool coefficient_matching_check(const AffineForm& a, const AffineForm& b, const AffineForm& c,
                                std::int64_t p) {
  if (a.coeffs.size() != b.coeffs.size() || a.coeffs.size() != c.coeffs.size())
    throw InputError("affine forms over different groups");
  if (mod_floor(a.constant + b.constant + c.constant, p) != 0) return false;
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    const std::int64_t ai = mod_floor(a.coeffs[i], p);
    if (ai != mod_floor(b.coeffs[i], p) || ai != mod_floor(c.coeffs[i], p)) return false;
  }
  return true;
}

std::vector<GroupElement> all_elements(const FiniteAbelianGroup& group, std::uint64_t limit) {
  if (group.order() > Int(static_cast<unsigned long>(limit)))
    throw CapacityError("group " + group.describe() + " too large to enumerate");
  std::vector<GroupElement> out;
  GroupElement e = group.zero();
  const auto& f = group.factors();
  for (;;) {
    out.push_back(e);
    std::size_t i = e.size();
    while (i > 0) {
      --i;
      if (++e[i] < f[i]) break;
      e[i] = 0;
      if (i == 0) return out;
    }
    if (e.empty()) return out;
  }
}

}  // namespace xorrep
