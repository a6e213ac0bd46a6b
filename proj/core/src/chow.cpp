#include "fano/chow.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace fano::chow {

bool LevelMajorLess::operator()(const Exponents& a, const Exponents& b) const {
  return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
}

int total_degree(const Exponents& exps) {
  int d = 0;
  for (int e : exps) d += e;
  return d;
}

// ----------------------------------------------------------------- ChowPoly

ChowPoly ChowPoly::constant(std::size_t generators, const ExactInt& value) {
  ChowPoly p(generators);
  p.add_term(Exponents(generators, 0), value);
  return p;
}

ChowPoly ChowPoly::monomial(const Exponents& exps, const ExactInt& coef) {
  ChowPoly p(exps.size());
  p.add_term(exps, coef);
  return p;
}

ChowPoly ChowPoly::linear(const LinearForm& form) {
  ChowPoly p(form.size());
  for (std::size_t g = 0; g < form.size(); ++g) {
    Exponents e(form.size(), 0);
    e[g] = 1;
    p.add_term(e, form[g]);
  }
  return p;
}

void ChowPoly::add_term(const Exponents& exps, const ExactInt& coef) {
  if (exps.size() != generators_) throw std::invalid_argument("exponent vector has the wrong length");
  if (coef == 0) return;
  auto [it, inserted] = terms_.try_emplace(exps, coef);
  if (!inserted) {
    it->second += coef;
    if (it->second == 0) terms_.erase(it);
  }
}

ExactInt ChowPoly::coefficient(const Exponents& exps) const {
  auto it = terms_.find(exps);
  return it == terms_.end() ? ExactInt(0) : it->second;
}

bool ChowPoly::is_homogeneous(int degree) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [degree](const auto& t) { return total_degree(t.first) == degree; });
}

ChowPoly& ChowPoly::operator+=(const ChowPoly& other) {
  if (other.generators_ != generators_) throw std::invalid_argument("generator count mismatch");
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

ChowPoly operator*(const ChowPoly& a, const ChowPoly& b) {
  if (a.generators_ != b.generators_) throw std::invalid_argument("generator count mismatch");
  ChowPoly out(a.generators_);
  Exponents e(a.generators_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t g = 0; g < e.size(); ++g) e[g] = ea[g] + eb[g];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

ChowPoly operator*(const ExactInt& s, const ChowPoly& p) {
  ChowPoly out(p.generators_);
  for (const auto& [e, c] : p.terms_) out.add_term(e, s * c);
  return out;
}

std::string ChowPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    os << (first ? "" : " + ") << it->second.get_str();
    for (std::size_t g = 0; g < it->first.size(); ++g) {
      if (it->first[g] == 0) continue;
      os << "*" << (g == 0 ? std::string("H") : "x" + std::to_string(g));
      if (it->first[g] > 1) os << "^" << it->first[g];
    }
    first = false;
  }
  return os.str();
}

// ------------------------------------------------------------- presentation

namespace {

ExactInt content(const LinearForm& form) {
  ExactInt g = 0;
  for (const auto& c : form) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

std::string form_to_string(const LinearForm& form) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t g = 0; g < form.size(); ++g) {
    if (form[g] == 0) continue;
    os << (first ? "" : " + ") << form[g].get_str() << "*" << (g == 0 ? std::string("H") : "x" + std::to_string(g));
    first = false;
  }
  return first ? "0" : os.str();
}

}  // namespace

std::string Rule::to_string() const {
  const std::string lhs = (generator == 0 ? std::string("H") : "x" + std::to_string(generator)) + "^" +
                          std::to_string(power);
  if (generator == 0) return lhs + " -> 0";
  return lhs + " -> " + factor.get_str() + "*(" + form_to_string(multiplier) + ")*x" + std::to_string(generator) +
         "^" + std::to_string(power - 1);
}

std::string ChowPresentation::generator_name(std::size_t g) const {
  return g == 0 ? "H" : "x" + std::to_string(g);
}

ChowPresentation presentation(const TowerSpec& spec) {
  if (spec.base_dim < 1) throw InvalidSpec("base_dim must be at least 1");
  const std::size_t gens = spec.levels.size() + 1;

  ChowPresentation pres;
  pres.base_dim = spec.base_dim;
  pres.levels = spec.levels;
  pres.dim = static_cast<int>(spec.base_dim);
  pres.fundamental.assign(gens, 0);
  pres.fundamental[0] = static_cast<int>(spec.base_dim);

  LinearForm h(gens, 0);
  h[0] = 1;
  LinearForm anti(gens, 0);
  anti[0] = spec.base_dim + 1;
  long iota = spec.base_dim + 1;

  pres.rules.push_back(Rule{0, static_cast<int>(spec.base_dim) + 1, 0, {}});
  pres.ample.push_back(h);
  pres.indices.push_back(iota);

  for (std::size_t j = 0; j < spec.levels.size(); ++j) {
    const auto [r, c] = spec.levels[j];
    const std::size_t g = j + 1;
    if (r < 0 || c < 0) throw InvalidSpec("negative level parameter");
    if (c > iota - 1) throw InvalidSpec("level " + std::to_string(j) + " violates the Fano condition");

    pres.rules.push_back(Rule{g, static_cast<int>(r) + 1, c, h});
    pres.dim += static_cast<int>(r);
    pres.fundamental[g] = static_cast<int>(r);

    if (r > 0) {
      // -K_new = (r+1) xi + pi^*(-K_old) - c H_old
      for (std::size_t i = 0; i < gens; ++i) anti[i] -= c * h[i];
      anti[g] += r + 1;
      const ExactInt ct = content(anti);
      LinearForm next(gens);
      for (std::size_t i = 0; i < gens; ++i) {
        if (!mpz_divisible_p(anti[i].get_mpz_t(), ct.get_mpz_t())) {
          throw IntegralityViolation("ample generator is not integral");
        }
        mpz_divexact(next[i].get_mpz_t(), anti[i].get_mpz_t(), ct.get_mpz_t());
      }
      h = std::move(next);
      iota = ct.get_si();
    }
    // r = 0: xi = c * H_old, the variety and its classes are unchanged
    pres.ample.push_back(h);
    pres.indices.push_back(iota);
  }
  pres.anticanonical = anti;
  return pres;
}

// ---------------------------------------------------------------- reduction

ChowPoly reduce(const ChowPoly& p, const ChowPresentation& pres, RewriteOrder order, std::uint64_t seed) {
  const std::size_t gens = pres.generators();
  if (p.generators() != gens) throw std::invalid_argument("polynomial does not match the presentation");

  std::mt19937_64 rng(seed);
  ChowPoly::Terms work = p.terms();
  ChowPoly out(gens);

  auto reducible = [&](const Exponents& e) {
    std::vector<std::size_t> js;
    for (std::size_t g = 0; g < gens; ++g) {
      if (e[g] >= pres.rules[g].power) js.push_back(g);
    }
    return js;
  };

  while (!work.empty()) {
    auto it = work.begin();
    switch (order) {
      case RewriteOrder::HighestLevelFirst: it = std::prev(work.end()); break;
      case RewriteOrder::LowestLevelFirst: break;
      case RewriteOrder::Shuffled:
        std::advance(it, std::uniform_int_distribution<std::size_t>(0, work.size() - 1)(rng));
        break;
    }
    Exponents e = it->first;
    ExactInt coef = std::move(it->second);
    work.erase(it);

    if (total_degree(e) > pres.dim) continue;
    const auto js = reducible(e);
    if (js.empty()) {
      out.add_term(e, coef);
      continue;
    }
    std::size_t g = 0;
    switch (order) {
      case RewriteOrder::HighestLevelFirst: g = js.back(); break;
      case RewriteOrder::LowestLevelFirst: g = js.front(); break;
      case RewriteOrder::Shuffled:
        g = js[std::uniform_int_distribution<std::size_t>(0, js.size() - 1)(rng)];
        break;
    }
    const Rule& rule = pres.rules[g];
    if (g == 0 || rule.factor == 0) continue;  // rewrites to zero

    e[g] -= 1;
    for (std::size_t i = 0; i < gens; ++i) {
      if (rule.multiplier[i] == 0) continue;
      Exponents next = e;
      next[i] += 1;
      ExactInt term = coef * rule.factor * rule.multiplier[i];
      auto [slot, inserted] = work.try_emplace(std::move(next), term);
      if (!inserted) {
        slot->second += term;
        if (slot->second == 0) work.erase(slot);
      }
    }
  }
  return out;
}

ExactInt integrate(const ChowPoly& p, const ChowPresentation& pres) {
  if (!p.is_homogeneous(pres.dim)) {
    throw DegreeMismatch("integrand is not homogeneous of degree " + std::to_string(pres.dim));
  }
  const ChowPoly nf = reduce(p, pres);
  for (const auto& [e, c] : nf.terms()) {
    if (e != pres.fundamental) throw std::logic_error("top-degree normal form has a non-fundamental monomial");
  }
  return nf.coefficient(pres.fundamental);
}

ExactInt anticanonical_power(const TowerSpec& spec) {
  const ChowPresentation pres = presentation(spec);
  const ChowPoly k = pres.anticanonical_class();
  ChowPoly acc = ChowPoly::constant(pres.generators(), 1);
  for (int i = 0; i < pres.dim; ++i) acc = reduce(acc * k, pres);
  return integrate(acc, pres);
}

}  // namespace fano::chow
