#pragma once

#include <memory>
#include <unordered_map>

#include "adaptt/syntax.hpp"

namespace adaptt {

struct NormOptions {
  // Fuse adjacent structural adapters of the same head (Π with Π, Σ with Σ,
  // inductive with inductive). Postulate chains are never fused.
  bool fuse = true;
  // Cache normal forms of terms by node identity. Results are identical
  // with it disabled; not safe to share across threads when enabled.
  bool memo = false;
};

template <class T>
class NormalForm {
 public:
  const T& get() const { return v_; }

 private:
  friend class Normalizer;
  explicit NormalForm(T v) : v_(std::move(v)) {}
  T v_;
};

class Normalizer {
 public:
  explicit Normalizer(NormOptions o = {}) : opts_(o) {}
  const NormOptions& options() const { return opts_; }

  Type nf(const Type& a) const;
  Term nf(const Term& t) const;
  Adapter nf(const Adapter& f) const;
  Inst nfInst(const Inst& i) const;
  Telescope nfTel(const Telescope& tel) const;
  SubComps nfComps(const SubComps& cs) const;
  TransComps nfTransComps(const TransComps& cs) const;
  Sub nf(const Sub& s) const;

  template <class T>
  NormalForm<T> normalForm(const T& x) const {
    return NormalForm<T>(nf(x));
  }

  // Operations on normal forms; results are normal.
  Term apply(const Term& f, const Term& u) const;
  Term proj1(const Term& p) const;
  Term proj2(const Term& p) const;
  Term castNf(const Term& t, const Adapter& f) const;
  Adapter composeAd(const Adapter& g, const Adapter& f) const;  // g after f

  bool conv(const Type& a, const Type& b) const;
  bool conv(const Term& a, const Term& b) const;
  bool conv(const Adapter& a, const Adapter& b) const;
  bool conv(const Inst& a, const Inst& b) const;
  bool conv(const Telescope& a, const Telescope& b) const;
  bool conv(const SubComps& a, const SubComps& b) const;
  bool conv(const TransComps& a, const TransComps& b) const;
  bool conv(const Sub& a, const Sub& b) const;

 private:
  Adapter nfChain(const std::vector<Adapter>& chain) const;
  Adapter fuse(const Adapter& first, const Adapter& second) const;
  Adapter collapse(const Adapter& f) const;

  bool convTyNf(const Type& a, const Type& b) const;
  bool convTmNf(const Term& a, const Term& b) const;
  bool convAdNf(const Adapter& a, const Adapter& b) const;
  bool convCompsNf(const SubComps& a, const SubComps& b) const;
  bool convTransCompsNf(const TransComps& a, const TransComps& b) const;

  NormOptions opts_;
  mutable std::unordered_map<const TermNode*, std::pair<Term, Term>> memo_;
};

const Normalizer& defaultNormalizer();

inline Type nf(const Type& a) { return defaultNormalizer().nf(a); }
inline Term nf(const Term& t) { return defaultNormalizer().nf(t); }
inline Adapter nf(const Adapter& f) { return defaultNormalizer().nf(f); }
template <class T>
bool conv(const T& a, const T& b) {
  return defaultNormalizer().conv(a, b);
}

// Iterated Π over a telescope: Π⋄.A = A, Π(Θ ▷ A).B = ΠΘ.ΠA.B.
Type piTel(const Telescope& tel, const Type& body);

}  // namespace adaptt
