#include "gch/ginfty.hpp"

#include "gch/graded.hpp"
#include "gch/symalg.hpp"

namespace gch::ginfty {

long GInfty::degree(const PackMono& m) const {
  long s = 0;
  for (const auto& X : m) s += packet_degree(X);
  return s;
}

long GInfty::degree(const std::vector<PackMono>& t) const {
  long s = 0;
  for (const auto& m : t) s += degree(m);
  return s;
}

// Each tensor factor is a product of packet classes; expand all of them
// multilinearly and canonicalize every factor.
void GInfty::add_product(STensor& out, std::vector<std::vector<TensorElem>> factors, const Rational& c) const {
  std::vector<LinComb<PackMono>> expanded;
  expanded.reserve(factors.size());
  for (const auto& f : factors) {
    expanded.push_back(product(f));
    if (expanded.back().is_zero()) return;
  }
  std::vector<PackMono> cur(expanded.size());
  std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t i, const Rational& coef) {
    if (i == expanded.size()) {
      out.add(cur, coef);
      return;
    }
    for (const auto& [m, cm] : expanded[i]) {
      cur[i] = m;
      rec(i + 1, coef * cm);
    }
  };
  rec(0, c);
}

LinComb<PackMono> GInfty::product(const std::vector<TensorElem>& packets) const {
  LinComb<PackMono> out;
  PackMono cur(packets.size());
  std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t i, const Rational& coef) {
    if (i == packets.size()) {
      PackMono m = cur;
      const int s = sym_canonicalize(m, [&](const Packet& X) { return packet_degree(X); });
      if (s != 0) out.add(std::move(m), coef * Rational(s));
      return;
    }
    for (const auto& [w, cw] : packets[i]) {
      cur[i] = w;
      rec(i + 1, coef * cw);
    }
  };
  rec(0, Rational(1));
  return out;
}

STensor GInfty::element(const std::vector<TensorElem>& packets) const {
  STensor out;
  for (const auto& [m, c] : product(packets)) out.add(std::vector<PackMono>{m}, c);
  return out;
}

STensor GInfty::big_delta(const PackMono& m) const {
  std::vector<int> degs;
  for (const auto& X : m) degs.push_back(static_cast<int>(packet_degree(X)));
  STensor out;
  for_each_bipartition(degs, [&](const std::vector<int>& I, const std::vector<int>& J, int sign) {
    PackMono a, b;
    for (int i : I) a.push_back(m[i]);
    for (int j : J) b.push_back(m[j]);
    out.add(std::vector<PackMono>{a, b}, Rational(sign));
  });
  return out;
}

STensor GInfty::kappa_packet(const Packet& X) const {
  const auto& Q = H_->quotient();
  STensor out;
  for (std::size_t j = 1; j < X.size(); ++j) {
    const Word u = slice(X, 0, j), v = slice(X, j, X.size());
    const long du = packet_degree(u), dv = packet_degree(v);
    const Rational s(sign_pow(du + 1));
    const TensorElem U = Q.reduce(u), V = Q.reduce(v);
    add_product(out, {{U}, {V}}, s);
    add_product(out, {{V}, {U}}, s * Rational(sign_pow(du * dv)));
  }
  return out;
}

STensor GInfty::kappa(const PackMono& m) const {
  const int n = static_cast<int>(m.size());
  std::vector<int> degs(n);
  for (int i = 0; i < n; ++i) degs[i] = static_cast<int>(packet_degree(m[i]));
  STensor out;
  for (int s = 0; s < n; ++s) {
    const STensor ks = kappa_packet(m[s]);
    if (ks.is_zero()) continue;
    std::vector<int> others;
    for (int i = 0; i < n; ++i)
      if (i != s) others.push_back(i);
    const int r = static_cast<int>(others.size());
    for (unsigned mask = 0; mask < (1u << r); ++mask) {
      std::vector<int> perm, I, J;
      long xI = 0;
      for (int t = 0; t < r; ++t)
        if (mask & (1u << t)) {
          I.push_back(others[t]);
          xI += degs[others[t]];
        } else {
          J.push_back(others[t]);
        }
      perm = I;
      perm.push_back(s);
      perm.insert(perm.end(), J.begin(), J.end());
      const Rational sign(koszul_sign(degs, perm) * sign_pow(xI));
      for (const auto& [t, c] : ks) {
        // t = {A, B} with A, B single packets
        std::vector<TensorElem> left, right;
        for (int i : I) left.emplace_back(m[i]);
        left.emplace_back(t[0][0]);
        right.emplace_back(t[1][0]);
        for (int j : J) right.emplace_back(m[j]);
        add_product(out, {left, right}, sign * c);
      }
    }
  }
  return out;
}

TensorElem GInfty::ell2(const Packet& X, const Packet& Y) const {
  return H_->bracket(TensorElem(X), TensorElem(Y)) * Rational(sign_pow(packet_degree(X)));
}

STensor GInfty::ell(const PackMono& m) const {
  const int n = static_cast<int>(m.size());
  std::vector<int> degs(n);
  for (int i = 0; i < n; ++i) degs[i] = static_cast<int>(packet_degree(m[i]));
  STensor out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const TensorElem b = ell2(m[i], m[j]);
      if (b.is_zero()) continue;
      std::vector<int> perm{i, j};
      std::vector<TensorElem> f{b};
      for (int k = 0; k < n; ++k)
        if (k != i && k != j) {
          perm.push_back(k);
          f.emplace_back(m[k]);
        }
      add_product(out, {f}, Rational(koszul_sign(degs, perm)));
    }
  return out;
}

STensor GInfty::m(const PackMono& mono) const {
  STensor out;
  long before = 0;
  for (std::size_t j = 0; j < mono.size(); ++j) {
    const TensorElem mj = H_->mu(TensorElem(mono[j]));
    if (!mj.is_zero()) {
      std::vector<TensorElem> f;
      for (std::size_t k = 0; k < mono.size(); ++k) f.push_back(k == j ? mj : TensorElem(mono[k]));
      add_product(out, {f}, Rational(sign_pow(before)));
    }
    before += packet_degree(mono[j]);
  }
  return out;
}

STensor GInfty::apply_at(const STensor& t, std::size_t slot, const MonoMap& f, int deg) const {
  STensor out;
  for (const auto& [factors, c] : t) {
    long front = 0;
    for (std::size_t i = 0; i < slot; ++i) front += degree(factors[i]);
    const Rational s = c * Rational(sign_pow(front * deg));
    for (const auto& [img, ci] : f(factors[slot])) {
      std::vector<PackMono> g(factors.begin(), factors.begin() + slot);
      g.insert(g.end(), img.begin(), img.end());
      g.insert(g.end(), factors.begin() + slot + 1, factors.end());
      out.add(std::move(g), s * ci);
    }
  }
  return out;
}

STensor GInfty::swap(const STensor& t, std::size_t slot) const {
  STensor out;
  for (const auto& [factors, c] : t) {
    auto g = factors;
    std::swap(g[slot], g[slot + 1]);
    out.add(std::move(g), c * Rational(sign_pow(degree(factors[slot]) * degree(factors[slot + 1]))));
  }
  return out;
}

MonoMap GInfty::delta_map() const {
  return [this](const PackMono& m) { return big_delta(m); };
}
MonoMap GInfty::kappa_map() const {
  return [this](const PackMono& m) { return kappa(m); };
}
MonoMap GInfty::ell_map() const {
  return [this](const PackMono& m) { return ell(m); };
}
MonoMap GInfty::m_map() const {
  return [this](const PackMono& mono) { return m(mono); };
}

}  // namespace gch::ginfty
