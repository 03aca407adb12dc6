#include "fbp/padic.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include <nlohmann/json.hpp>

namespace fbp::padic {

namespace {

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

i64 ipow_checked(i64 base, int exp, i64 limit) {
  __int128 r = 1;
  for (int i = 0; i < exp; ++i) {
    r *= base;
    if (r > limit) throw CapError("ring size exceeds the configured cap");
  }
  return static_cast<i64>(r);
}

i64 mod_pos(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

i64 FieldSpec::q() const {
  i64 r = 1;
  for (int i = 0; i < f(); ++i) r *= p;
  return r;
}

std::string FieldSpec::name() const {
  return "p=" + std::to_string(p) + " f=" + std::to_string(f()) + " e=" + std::to_string(e()) +
         " k=" + std::to_string(k);
}

FieldSpec FieldSpec::from_json(const nlohmann::json& j) {
  FieldSpec s;
  if (!j.is_object()) throw InputError("field spec must be a JSON object");
  if (!j.contains("p") || !j["p"].is_number_integer()) throw InputError("field spec needs integer 'p'");
  s.p = j["p"].get<i64>();
  if (!j.contains("u") || !j["u"].is_array()) throw InputError("field spec needs array 'u'");
  for (const auto& c : j["u"]) {
    if (!c.is_number_integer()) throw InputError("'u' coefficients must be integers");
    s.u.push_back(c.get<i64>());
  }
  if (!j.contains("E") || !j["E"].is_array()) throw InputError("field spec needs array 'E'");
  for (const auto& c : j["E"]) {
    if (c.is_number_integer()) {
      s.E.push_back(UPoly{c.get<i64>()});
    } else if (c.is_array()) {
      UPoly up;
      for (const auto& y : c) {
        if (!y.is_number_integer()) throw InputError("'E' coefficients must be integers");
        up.push_back(y.get<i64>());
      }
      s.E.push_back(std::move(up));
    } else {
      throw InputError("'E' entries must be integers or integer arrays");
    }
  }
  if (!j.contains("k") || !j["k"].is_number_integer()) throw InputError("field spec needs integer 'k'");
  s.k = j["k"].get<int>();
  if (j.contains("guard")) s.guard_exponent = j["guard"].get<int>();
  return s;
}

nlohmann::json FieldSpec::to_json() const {
  nlohmann::json j;
  j["p"] = p;
  j["u"] = u;
  nlohmann::json earr = nlohmann::json::array();
  for (const auto& c : E) {
    if (c.size() == 1) {
      earr.push_back(c[0]);
    } else {
      earr.push_back(c);
    }
  }
  j["E"] = earr;
  j["k"] = k;
  return j;
}

// ---------------------------------------------------------------------------
// Unramified coefficient arithmetic: Z[y]/(u, p^guard)
// ---------------------------------------------------------------------------

UPoly Ring::uadd(const UPoly& a, const UPoly& b) const {
  UPoly r(static_cast<std::size_t>(f_), 0);
  for (int i = 0; i < f_; ++i) r[i] = mod_pos(a[i] + b[i], guard_mod_);
  return r;
}

UPoly Ring::uneg(const UPoly& a) const {
  UPoly r(static_cast<std::size_t>(f_), 0);
  for (int i = 0; i < f_; ++i) r[i] = a[i] == 0 ? 0 : guard_mod_ - a[i];
  return r;
}

UPoly Ring::uscale(const UPoly& a, i64 c) const {
  UPoly r(static_cast<std::size_t>(f_), 0);
  c = mod_pos(c, guard_mod_);
  for (int i = 0; i < f_; ++i) r[i] = static_cast<i64>((static_cast<__int128>(a[i]) * c) % guard_mod_);
  return r;
}

UPoly Ring::umul(const UPoly& a, const UPoly& b) const {
  std::vector<i64> prod(static_cast<std::size_t>(2 * f_ - 1), 0);
  for (int i = 0; i < f_; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < f_; ++j) {
      prod[i + j] = static_cast<i64>(
          (prod[i + j] + static_cast<__int128>(a[i]) * b[j]) % guard_mod_);
    }
  }
  // Reduce modulo the monic u: y^f = -(u_0 + ... + u_{f-1} y^{f-1}).
  for (int d = 2 * f_ - 2; d >= f_; --d) {
    i64 t = prod[d];
    if (t == 0) continue;
    prod[d] = 0;
    for (int j = 0; j < f_; ++j) {
      __int128 v = prod[d - f_ + j] - static_cast<__int128>(t) * spec_.u[j];
      prod[d - f_ + j] = static_cast<i64>(((v % guard_mod_) + guard_mod_) % guard_mod_);
    }
  }
  prod.resize(static_cast<std::size_t>(f_));
  return prod;
}

UPoly Ring::uinv_unit(const UPoly& a) const {
  // Inverse in F_q by Fermat, then Hensel lifting to the guard precision.
  auto res_only = [this](const UPoly& x) {
    UPoly r = x;
    for (auto& c : r) c %= p_;
    return r;
  };
  UPoly inv(static_cast<std::size_t>(f_), 0);
  inv[0] = 1;
  UPoly base = res_only(a);
  i64 exp = q_ - 2;
  // Work mod p during the Fermat stage.
  auto mul_mod_p = [this, &res_only](const UPoly& x, const UPoly& y) {
    return res_only(umul(x, y));
  };
  UPoly acc = inv;
  UPoly b = base;
  while (exp > 0) {
    if (exp & 1) acc = mul_mod_p(acc, b);
    b = mul_mod_p(b, b);
    exp >>= 1;
  }
  // Hensel: i <- i(2 - a·i) doubles the precision each round.
  UPoly two(static_cast<std::size_t>(f_), 0);
  two[0] = 2 % guard_mod_;
  UPoly x = acc;
  for (int round = 0; round < 64; ++round) {
    UPoly ax = umul(a, x);
    UPoly corr = uadd(two, uneg(ax));
    UPoly next = umul(x, corr);
    if (next == x) break;
    x = next;
  }
  UPoly check = umul(a, x);
  if (check[0] != 1) throw EvalError("internal: unit inversion failed");
  for (int i = 1; i < f_; ++i)
    if (check[i] != 0) throw EvalError("internal: unit inversion failed");
  return x;
}

// ---------------------------------------------------------------------------
// Ring construction and validation
// ---------------------------------------------------------------------------

Ring::Ring(FieldSpec spec, int trunc_len, i64 element_cap) : spec_(std::move(spec)) {
  p_ = spec_.p;
  f_ = spec_.f();
  e_ = spec_.e();
  k_ = spec_.k;
  if (trunc_len < 1) throw InputError("truncation length must be >= 1");
  L_ = trunc_len;
  if (f_ < 1) throw InputError("u must be monic of degree >= 1");
  if (e_ < 1) throw InputError("E must be monic of degree >= 1");
  if (spec_.k < 0) throw InputError("level k must be >= 0");
  q_ = spec_.q();
  N_ = spec_.N();

  guard_exp_ = spec_.guard_exponent.value_or((L_ + e_ - 1) / e_ + 1 + L_);
  if (guard_exp_ < (L_ + e_ - 1) / e_ + 1)
    throw InputError("guard exponent below the canonical precision");
  guard_mod_ = ipow_checked(p_, guard_exp_, i64(4) * 1000 * 1000 * 1000 * 1000 * 1000);

  mexp_.resize(static_cast<std::size_t>(e_));
  mmod_.resize(static_cast<std::size_t>(e_));
  for (int j = 0; j < e_; ++j) {
    int rem = L_ - j;
    mexp_[j] = rem <= 0 ? 0 : (rem + e_ - 1) / e_;
    mmod_[j] = 1;
    for (int t = 0; t < mexp_[j]; ++t) mmod_[j] *= p_;
  }

  size_ = 1;
  for (int j = 0; j < e_; ++j)
    for (int i = 0; i < f_; ++i) {
      __int128 s = static_cast<__int128>(size_) * mmod_[j];
      if (s > element_cap && element_cap > 0) {
        // Internal rings (lift precision) pass element_cap = 0 to skip.
        throw CapError("ring size q^" + std::to_string(L_) + " exceeds the element cap");
      }
      if (s > (i64(1) << 62)) throw CapError("ring size overflows");
      size_ = static_cast<i64>(s);
    }

  validate();

  // E's non-leading coefficients reduced into the guard ring.
  ecoeff_.clear();
  for (int j = 0; j < e_; ++j) {
    Elem reduced = from_upoly(spec_.E[static_cast<std::size_t>(j)]);
    ecoeff_.push_back(UPoly(reduced.begin(), reduced.begin() + f_));
  }

  // Eisenstein shape: non-leading coefficients divisible by p, constant
  // coefficient exactly p times a unit.
  for (int j = 0; j < e_; ++j)
    for (i64 c : ecoeff_[j])
      if (c % p_ != 0)
        throw InputError("E is not Eisenstein: coefficient of x^" + std::to_string(j) +
                         " is a unit");
  ec0_unit_.assign(static_cast<std::size_t>(f_), 0);
  bool unit = false;
  for (int i = 0; i < f_; ++i) {
    ec0_unit_[i] = ecoeff_[0][i] / p_;
    if (ec0_unit_[i] % p_ != 0) unit = true;
  }
  if (!unit)
    throw InputError("E is not Eisenstein: constant coefficient is divisible by p^2");
  ec0_unit_inv_ = uinv_unit(ec0_unit_);

  // Powers of the uniformizer.
  pi_pows_.clear();
  pi_pows_.push_back(one());
  Elem x = zero();
  if (e_ >= 2) {
    x[static_cast<std::size_t>(f_)] = 1;  // the class of x itself
  } else {
    // e = 1: x = -c_0 in the quotient.
    for (int i = 0; i < f_; ++i) x[i] = ecoeff_[0][i] == 0 ? 0 : guard_mod_ - ecoeff_[0][i];
  }
  for (int m = 1; m <= L_; ++m) pi_pows_.push_back(mul(pi_pows_.back(), x));
}

void Ring::validate() {
  if (!is_prime(p_)) throw InputError("p = " + std::to_string(p_) + " is not prime");
  if (spec_.u.size() < 2) throw InputError("u must have degree >= 1");
  if (spec_.u.back() != 1) throw InputError("u must be monic with leading coefficient 1");
  for (const auto& c : spec_.E)
    if (c.empty()) throw InputError("E coefficients must be nonempty");
  const UPoly& lead = spec_.E.back();
  if (lead[0] != 1) throw InputError("E must be monic with leading coefficient 1");
  for (std::size_t i = 1; i < lead.size(); ++i)
    if (lead[i] != 0) throw InputError("E must be monic with leading coefficient 1");

  // Irreducibility of u modulo p by trial division over F_p.
  std::vector<i64> um(spec_.u.begin(), spec_.u.end());
  for (auto& c : um) c = mod_pos(c, p_);
  auto poly_mod = [this](std::vector<i64> a, const std::vector<i64>& b) {
    // both monic-ish; b monic of degree db
    int db = static_cast<int>(b.size()) - 1;
    while (static_cast<int>(a.size()) - 1 >= db) {
      i64 t = a.back();
      int shift = static_cast<int>(a.size()) - 1 - db;
      if (t != 0)
        for (int i = 0; i <= db; ++i)
          a[static_cast<std::size_t>(shift + i)] =
              mod_pos(a[static_cast<std::size_t>(shift + i)] - t * b[static_cast<std::size_t>(i)], p_);
      a.pop_back();
    }
    return a;
  };
  for (int d = 1; 2 * d <= f_; ++d) {
    // All monic polys of degree d over F_p.
    i64 count = 1;
    for (int i = 0; i < d; ++i) count *= p_;
    for (i64 idx = 0; idx < count; ++idx) {
      std::vector<i64> g(static_cast<std::size_t>(d) + 1, 0);
      i64 t = idx;
      for (int i = 0; i < d; ++i) {
        g[static_cast<std::size_t>(i)] = t % p_;
        t /= p_;
      }
      g[static_cast<std::size_t>(d)] = 1;
      std::vector<i64> rem = poly_mod(um, g);
      bool zero = true;
      for (i64 c : rem)
        if (c != 0) zero = false;
      if (zero) throw InputError("u is reducible modulo p");
    }
  }
}

// ---------------------------------------------------------------------------
// Element operations
// ---------------------------------------------------------------------------

Ring::Elem Ring::one() const {
  Elem r = zero();
  r[0] = 1;
  return r;
}

Ring::Elem Ring::pi() const { return pi_pows_[1]; }

Ring::Elem Ring::pi_pow(int m) const {
  if (m < 0 || m > L_) throw EvalError("pi power out of range");
  return pi_pows_[static_cast<std::size_t>(m)];
}

Ring::Elem Ring::p_elem() const { return from_int(p_); }

Ring::Elem Ring::from_int(i64 v) const {
  Elem r = zero();
  r[0] = mod_pos(v, guard_mod_);
  return r;
}

Ring::Elem Ring::from_upoly(const UPoly& raw) const {
  std::vector<i64> work(raw.begin(), raw.end());
  for (auto& v : work) v = mod_pos(v, guard_mod_);
  while (static_cast<int>(work.size()) > f_) {
    i64 t = work.back();
    work.pop_back();
    int d = static_cast<int>(work.size());
    if (t == 0) continue;
    for (int i = 0; i < f_; ++i) {
      __int128 v = work[static_cast<std::size_t>(d - f_ + i)] -
                   static_cast<__int128>(t) * spec_.u[static_cast<std::size_t>(i)];
      work[static_cast<std::size_t>(d - f_ + i)] =
          static_cast<i64>(((v % guard_mod_) + guard_mod_) % guard_mod_);
    }
  }
  work.resize(static_cast<std::size_t>(f_), 0);
  Elem r = zero();
  for (int i = 0; i < f_; ++i) r[static_cast<std::size_t>(i)] = work[static_cast<std::size_t>(i)];
  return r;
}

Ring::Elem Ring::add(const Elem& a, const Elem& b) const {
  Elem r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mod_pos(a[i] + b[i], guard_mod_);
  return r;
}

Ring::Elem Ring::sub(const Elem& a, const Elem& b) const {
  Elem r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mod_pos(a[i] - b[i], guard_mod_);
  return r;
}

Ring::Elem Ring::neg(const Elem& a) const {
  Elem r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] == 0 ? 0 : guard_mod_ - a[i];
  return r;
}

Ring::Elem Ring::mul(const Elem& a, const Elem& b) const {
  // Convolution in x, coefficients in the unramified ring, then reduction
  // of x^e..x^(2e-2) through E.
  std::vector<UPoly> prod(static_cast<std::size_t>(2 * e_ - 1),
                          UPoly(static_cast<std::size_t>(f_), 0));
  for (int i = 0; i < e_; ++i) {
    UPoly ai(a.begin() + i * f_, a.begin() + (i + 1) * f_);
    bool zero = true;
    for (i64 c : ai)
      if (c) zero = false;
    if (zero) continue;
    for (int j = 0; j < e_; ++j) {
      UPoly bj(b.begin() + j * f_, b.begin() + (j + 1) * f_);
      prod[static_cast<std::size_t>(i + j)] =
          uadd(prod[static_cast<std::size_t>(i + j)], umul(ai, bj));
    }
  }
  for (int d = 2 * e_ - 2; d >= e_; --d) {
    UPoly t = prod[static_cast<std::size_t>(d)];
    bool zero = true;
    for (i64 c : t)
      if (c) zero = false;
    if (zero) continue;
    prod[static_cast<std::size_t>(d)].assign(static_cast<std::size_t>(f_), 0);
    for (int j = 0; j < e_; ++j) {
      // x^d = -sum_j E_j x^(d-e+j)
      prod[static_cast<std::size_t>(d - e_ + j)] =
          uadd(prod[static_cast<std::size_t>(d - e_ + j)], uneg(umul(t, ecoeff_[j])));
    }
  }
  Elem r(static_cast<std::size_t>(e_) * f_);
  for (int j = 0; j < e_; ++j)
    for (int i = 0; i < f_; ++i) r[static_cast<std::size_t>(j * f_ + i)] = prod[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
  return r;
}

Ring::Elem Ring::pow(const Elem& a, i64 n) const {
  if (n < 0) throw EvalError("ring pow requires a nonnegative exponent");
  Elem acc = one();
  Elem base = a;
  while (n > 0) {
    if (n & 1) acc = mul(acc, base);
    base = mul(base, base);
    n >>= 1;
  }
  return acc;
}

Ring::Elem Ring::canonical(const Elem& a) const {
  Elem r(a.size());
  for (int j = 0; j < e_; ++j)
    for (int i = 0; i < f_; ++i)
      r[static_cast<std::size_t>(j * f_ + i)] =
          mmod_[j] == 1 ? 0 : a[static_cast<std::size_t>(j * f_ + i)] % mmod_[j];
  return r;
}

bool Ring::equal(const Elem& a, const Elem& b) const { return canonical(a) == canonical(b); }

bool Ring::is_zero(const Elem& a) const {
  for (int j = 0; j < e_; ++j)
    for (int i = 0; i < f_; ++i)
      if (mmod_[j] != 1 && a[static_cast<std::size_t>(j * f_ + i)] % mmod_[j] != 0) return false;
  return true;
}

int Ring::val(const Elem& a) const {
  int best = L_;
  for (int j = 0; j < e_; ++j) {
    if (mmod_[j] == 1) continue;
    // p-adic valuation of the coefficient of x^j, capped at its modulus.
    int vp = mexp_[j];
    for (int i = 0; i < f_; ++i) {
      i64 c = a[static_cast<std::size_t>(j * f_ + i)] % mmod_[j];
      if (c == 0) continue;
      int v = 0;
      while (c % p_ == 0) {
        c /= p_;
        ++v;
      }
      vp = std::min(vp, v);
    }
    if (vp < mexp_[j]) best = std::min(best, e_ * vp + j);
  }
  return best;
}

i64 Ring::rank(const Elem& a) const {
  i64 r = 0;
  for (int j = 0; j < e_; ++j)
    for (int i = 0; i < f_; ++i) {
      i64 digit = mmod_[j] == 1 ? 0 : a[static_cast<std::size_t>(j * f_ + i)] % mmod_[j];
      if (mmod_[j] != 1) r = r * mmod_[j] + digit;
    }
  return r;
}

Ring::Elem Ring::unrank(i64 r) const {
  Elem a = zero();
  for (int j = e_ - 1; j >= 0; --j)
    for (int i = f_ - 1; i >= 0; --i) {
      if (mmod_[j] == 1) continue;
      a[static_cast<std::size_t>(j * f_ + i)] = r % mmod_[j];
      r /= mmod_[j];
    }
  return a;
}

Ring::Elem Ring::div_by_pi(const Elem& a, int m) const {
  Elem w = a;
  for (int step = 0; step < m; ++step) {
    // Solve x·z = w: z_{e-1} = -(w_0/p)·(E_0/p)^{-1}, then
    // z_{j-1} = w_j + z_{e-1}·E_j.
    UPoly w0(w.begin(), w.begin() + f_);
    UPoly w0p(static_cast<std::size_t>(f_), 0);
    for (int i = 0; i < f_; ++i) {
      if (w0[i] % p_ != 0) throw EvalError("division by pi of an element with valuation 0");
      w0p[i] = w0[i] / p_;
    }
    UPoly z_top = uneg(umul(w0p, ec0_unit_inv_));
    Elem z(static_cast<std::size_t>(e_) * f_, 0);
    for (int j = 1; j < e_; ++j) {
      UPoly wj(w.begin() + j * f_, w.begin() + (j + 1) * f_);
      UPoly zj = uadd(wj, umul(z_top, ecoeff_[j]));
      for (int i = 0; i < f_; ++i) z[static_cast<std::size_t>((j - 1) * f_ + i)] = zj[i];
    }
    for (int i = 0; i < f_; ++i) z[static_cast<std::size_t>((e_ - 1) * f_ + i)] = z_top[i];
    w = std::move(z);
  }
  return w;
}

Ring::Elem Ring::project_to(const Ring& target, const Elem& a) const {
  if (target.p_ != p_ || target.f_ != f_ || target.e_ != e_)
    throw EvalError("projection between incompatible rings");
  if (target.L_ > L_) throw EvalError("projection must not gain precision");
  return target.canonical(a);
}

// ---------------------------------------------------------------------------
// Residue field, Teichmüller lifts, digits
// ---------------------------------------------------------------------------

UPoly Ring::residue_of(const Elem& a) const {
  UPoly r(a.begin(), a.begin() + f_);
  for (auto& c : r) c %= p_;
  return r;
}

UPoly Ring::mu_residue() const {
  if (!mu_res_.empty()) return mu_res_;
  auto mul_res = [this](const UPoly& x, const UPoly& y) {
    UPoly r = umul(x, y);
    for (auto& c : r) c %= p_;
    return r;
  };
  UPoly one_res(static_cast<std::size_t>(f_), 0);
  one_res[0] = 1;
  for (i64 cand = 1; cand < q_; ++cand) {
    UPoly g(static_cast<std::size_t>(f_), 0);
    i64 t = cand;
    for (int i = 0; i < f_; ++i) {
      g[i] = t % p_;
      t /= p_;
    }
    UPoly acc = g;
    i64 order = 1;
    while (!(acc == one_res)) {
      acc = mul_res(acc, g);
      ++order;
      if (order > q_) throw EvalError("internal: runaway order computation in F_q");
    }
    if (order == q_ - 1) {
      mu_res_ = g;
      return mu_res_;
    }
  }
  throw EvalError("internal: no generator found in F_q");
}

Ring::Elem Ring::teichmuller(const UPoly& residue) const {
  Elem t = zero();
  for (int i = 0; i < f_; ++i) t[i] = mod_pos(residue[i], p_);
  t = canonical(t);
  int cap = 4 * L_ + 8;
  for (int iter = 0; iter < cap; ++iter) {
    Elem next = canonical(pow(t, q_));
    if (next == t) return t;
    t = std::move(next);
  }
  throw EvalError("Teichmuller iteration failed to converge");
}

const Ring::Elem& Ring::teich(int i) const {
  if (teich_.empty()) {
    teich_.push_back(canonical(one()));
    if (q_ > 2) {
      Elem m = teichmuller(mu_residue());
      teich_.push_back(m);
      for (i64 j = 2; j < q_ - 1; ++j) teich_.push_back(canonical(mul(teich_.back(), m)));
    } else {
      (void)mu_residue();
    }
  }
  return teich_[static_cast<std::size_t>(i)];
}

Ring::Elem Ring::mu() const { return q_ == 2 ? teich(0) : teich(1); }

std::vector<int> Ring::to_digits(const Elem& a) const {
  if (dlog_.empty()) {
    // Discrete-log table: residue rank -> Teichmüller exponent.
    dlog_.assign(static_cast<std::size_t>(q_), -1);
    for (i64 i = 0; i < q_ - 1; ++i) {
      UPoly r = residue_of(teich(static_cast<int>(i)));
      i64 rk = 0;
      for (int t = f_ - 1; t >= 0; --t) rk = rk * p_ + r[t];
      dlog_[static_cast<std::size_t>(rk)] = static_cast<int>(i);
    }
  }
  const std::vector<int>& dlog = dlog_;
  std::vector<int> digits(static_cast<std::size_t>(L_), -1);
  Elem r = canonical(a);
  while (true) {
    int v = val(r);
    if (v >= L_) break;
    UPoly res = residue_of(div_by_pi(r, v));
    i64 rk = 0;
    for (int t = f_ - 1; t >= 0; --t) rk = rk * p_ + res[t];
    int digit = dlog[static_cast<std::size_t>(rk)];
    if (digit < 0) throw EvalError("internal: digit residue is not a Teichmuller residue");
    Elem next = canonical(sub(r, mul(teich(digit), pi_pow(v))));
    if (val(next) <= v) throw EvalError("internal: digit extraction did not raise valuation");
    digits[static_cast<std::size_t>(v)] = digit;
    r = std::move(next);
  }
  return digits;
}

Ring::Elem Ring::from_digits(const std::vector<int>& digits) const {
  if (static_cast<int>(digits.size()) != L_) throw EvalError("digit vector has the wrong length");
  Elem acc = zero();
  for (int j = 0; j < L_; ++j) {
    if (digits[static_cast<std::size_t>(j)] < 0) continue;
    acc = add(acc, mul(teich(digits[static_cast<std::size_t>(j)]), pi_pow(j)));
  }
  return canonical(acc);
}

std::string Ring::to_string(const Elem& a) const {
  Elem c = canonical(a);
  if (e_ == 1 && f_ == 1) return std::to_string(c[0]);
  std::string out;
  bool any = false;
  for (int j = 0; j < e_; ++j) {
    // Render the UPoly coefficient of x^j.
    std::string coeff;
    bool cz = true;
    for (int i = 0; i < f_; ++i) {
      i64 v = c[static_cast<std::size_t>(j * f_ + i)];
      if (v == 0) continue;
      if (!cz) coeff += "+";
      coeff += std::to_string(v);
      if (i >= 1) coeff += i == 1 ? "y" : "y^" + std::to_string(i);
      cz = false;
    }
    if (cz) continue;
    if (any) out += " + ";
    bool needs_parens = coeff.find('+') != std::string::npos && j > 0;
    if (j == 0) {
      out += coeff;
    } else {
      out += needs_parens ? "(" + coeff + ")" : coeff;
      out += j == 1 ? "*x" : "*x^" + std::to_string(j);
    }
    any = true;
  }
  return any ? out : "0";
}

std::shared_ptr<const Ring> build_ring(const FieldSpec& spec, i64 element_cap) {
  auto ring = std::make_shared<Ring>(spec, spec.N(), element_cap);
  // Count check: the mixed-modulus enumeration has exactly q^N points.
  i64 expected = 1;
  for (int i = 0; i < ring->level_n(); ++i) expected *= ring->q();
  if (ring->size() != expected)
    throw EvalError("internal: ring size disagrees with q^N");
  return ring;
}

// ---------------------------------------------------------------------------
// Unit group
// ---------------------------------------------------------------------------

UnitGroup unit_group(const Ring& ring) {
  UnitGroup out;
  out.rank_to_unit.assign(static_cast<std::size_t>(ring.size()), -1);
  for (i64 r = 0; r < ring.size(); ++r) {
    Ring::Elem e = ring.unrank(r);
    if (ring.val(e) == 0) {
      out.rank_to_unit[static_cast<std::size_t>(r)] = static_cast<i64>(out.units.size());
      out.units.push_back(std::move(e));
    }
  }
  const i64 n = static_cast<i64>(out.units.size());
  auto op = [&ring, &out](i64 a, i64 b) {
    i64 rk = ring.rank(ring.canonical(
        ring.mul(out.units[static_cast<std::size_t>(a)], out.units[static_cast<std::size_t>(b)])));
    i64 idx = out.rank_to_unit[static_cast<std::size_t>(rk)];
    if (idx < 0) throw EvalError("internal: unit product is not a unit");
    return idx;
  };
  i64 one_idx = out.rank_to_unit[static_cast<std::size_t>(ring.rank(ring.one()))];
  AbelianStructure st = abelian_structure(n, op, one_idx);
  out.group = st.group;
  out.coords = std::move(st.coords);
  return out;
}

// ---------------------------------------------------------------------------
// G structure
// ---------------------------------------------------------------------------

i64 GStruct::mul_units(i64 a, i64 b) const {
  i64 rk = ring->rank(ring->canonical(
      ring->mul(units.units[static_cast<std::size_t>(a)], units.units[static_cast<std::size_t>(b)])));
  return units.rank_to_unit[static_cast<std::size_t>(rk)];
}

i64 GStruct::inv_unit(i64 a) const {
  i64 order = units.group.order();
  i64 acc = unit_one;
  i64 base = a;
  i64 n = order - 1;
  while (n > 0) {
    if (n & 1) acc = mul_units(acc, base);
    base = mul_units(base, base);
    n >>= 1;
  }
  return acc;
}

GElem GStruct::mul(const GElem& a, const GElem& b) const {
  return {a.m + b.m, mul_units(a.unit, b.unit)};
}

GElem GStruct::inv(const GElem& a) const { return {-a.m, inv_unit(a.unit)}; }

GStruct build_G(const FieldSpec& spec, i64 element_cap) {
  GStruct g;
  g.spec = spec;
  g.ring = build_ring(spec, element_cap);
  int lift_len = std::max(2 * g.ring->level_n(), spec.e() + 1);
  // The lift ring needs its own division headroom; a user guard override
  // sized for the level-N ring must not constrain it.
  FieldSpec lift_spec = spec;
  lift_spec.guard_exponent.reset();
  g.lift = std::make_shared<Ring>(lift_spec, lift_len, /*element_cap=*/0);
  g.units = unit_group(*g.ring);
  g.unit_one =
      g.units.rank_to_unit[static_cast<std::size_t>(g.ring->rank(g.ring->one()))];

  // p factors as pi^e times a unit; extract the witness in the lift ring.
  const Ring& lift = *g.lift;
  Ring::Elem p_lift = lift.p_elem();
  if (lift.val(p_lift) != spec.e())
    throw EvalError("v(p) != e in the constructed ring");
  Ring::Elem w = lift.div_by_pi(p_lift, spec.e());
  if (lift.val(w) != 0) throw EvalError("internal: p/pi^e is not a unit");
  Ring::Elem w_n = lift.project_to(*g.ring, w);
  g.p_unit = g.units.rank_to_unit[static_cast<std::size_t>(g.ring->rank(w_n))];
  if (g.p_unit < 0) throw EvalError("internal: p/pi^e class not found among units");
  return g;
}

// ---------------------------------------------------------------------------
// Theta
// ---------------------------------------------------------------------------

ThetaTable theta(const GStruct& g, i64 lift_cap) {
  const Ring& ring = *g.ring;
  const Ring& lift = *g.lift;
  const int N = ring.level_n();
  const i64 nunits = static_cast<i64>(g.units.units.size());

  ThetaTable table;
  table.N = N;
  table.zero_rank = ring.rank(ring.zero());
  table.alpha.assign(static_cast<std::size_t>(N), std::vector<i64>(static_cast<std::size_t>(nunits), 0));
  for (int m = 0; m < N; ++m)
    for (i64 u = 0; u < nunits; ++u) {
      Ring::Elem alpha = ring.canonical(
          ring.mul(ring.pi_pow(m), g.units.units[static_cast<std::size_t>(u)]));
      table.alpha[static_cast<std::size_t>(m)][static_cast<std::size_t>(u)] = ring.rank(alpha);
    }

  // Verification against honest lifts at pi^(2N) precision.
  __int128 lift_size = 1;
  bool exhaustive = true;
  for (int i = 0; i < lift.length(); ++i) {
    lift_size *= lift.q();
    if (lift_size > lift_cap) {
      exhaustive = false;
      break;
    }
  }

  auto check_lift = [&](const Ring::Elem& z) {
    int v = lift.val(z);
    Ring::Elem z_n = lift.project_to(ring, z);
    if (v >= N) {
      if (!ring.is_zero(z_n))
        throw EvalError("theta verification: deep lift with nonzero truncation");
      return;
    }
    Ring::Elem w = lift.div_by_pi(z, v);
    Ring::Elem w_n = lift.project_to(ring, w);
    i64 u = g.units.rank_to_unit[static_cast<std::size_t>(ring.rank(w_n))];
    if (u < 0) throw EvalError("theta verification: unit part is not a unit class");
    if (table.alpha[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] != ring.rank(z_n))
      throw EvalError("theta verification: lift disagrees with the table");
  };

  if (exhaustive) {
    for (i64 r = 0; r < static_cast<i64>(lift_size); ++r) check_lift(lift.unrank(r));
  } else {
    // Deterministic samples: for every class (m, u), perturb the canonical
    // lift by 1 + pi^N·s for a fixed handful of s.
    std::vector<Ring::Elem> perturbations;
    perturbations.push_back(lift.zero());
    perturbations.push_back(lift.one());
    perturbations.push_back(lift.mu());
    perturbations.push_back(lift.pi());
    perturbations.push_back(lift.add(lift.one(), lift.pi()));
    for (int m = 0; m < N; ++m)
      for (i64 u = 0; u < nunits; ++u) {
        Ring::Elem w(g.units.units[static_cast<std::size_t>(u)]);  // embeds as a lift
        for (const auto& s : perturbations) {
          Ring::Elem scaled = lift.mul(lift.pi_pow(N), s);
          Ring::Elem w2 = lift.mul(w, lift.add(lift.one(), scaled));
          Ring::Elem z = lift.mul(lift.pi_pow(m), w2);
          if (lift.val(z) != m) throw EvalError("theta verification: lift valuation mismatch");
          check_lift(z);
        }
      }
  }
  return table;
}

}  // namespace fbp::padic
