/*!
 *  Copyright (c) 2026 by Contributors
 * \file gcd/conditional.h
 * \brief Exact grammar-conditioned decoding: survival probabilities, the
 *        h-transform next-token distribution, and masking-distortion reports.
 *
 * Conditioning is on "accepted and terminated by the end signal within the
 * horizon" (total token count); the horizon is reported with every value.
 * Table models run in exact rational arithmetic so the identities hold
 * exactly; seeded-random models run in double precision.
 */
#ifndef GCD_CONDITIONAL_H_
#define GCD_CONDITIONAL_H_

#include <cmath>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gcd/decode.h"
#include "gcd/rational.h"
#include "gcd/toylm.h"

namespace gcd {

struct ConditionalOptions {
  uint32_t horizon = 6;          // max total sequence length, in tokens
  uint64_t budget = 2'000'000;   // enumeration guard: |V|^horizon must fit
};

struct DistortionReport {
  std::vector<uint32_t> admissible;  // token ids; includes eos when admissible
  double h_prefix;
  double h_min;
  double h_max;
  double gamma;        // +inf when h_min == 0
  bool vacuous;        // h_min == 0: bounds carry no content
  double kl;           // KL(masked || conditioned), nats
  double tv;           // total variation distance
  double kl_bound;     // log gamma
  double tv_bound;     // sqrt(log(gamma) / 2)
  bool kl_violated;
  bool tv_violated;
  uint32_t horizon;
  std::vector<std::string> exact_h;  // per admissible token; empty for double runs
  std::string exact_gamma;
};

namespace detail {

inline double AsDouble(double x) { return x; }
inline double AsDouble(const Rat& r) { return r.ToDouble(); }
inline std::string AsExactString(double) { return {}; }
inline std::string AsExactString(const Rat& r) { return r.ToString(); }

template <class Num>
std::vector<Num> ModelDist(const ToyLm& lm, const std::vector<uint32_t>& prefix);

template <>
inline std::vector<double> ModelDist<double>(const ToyLm& lm,
                                             const std::vector<uint32_t>& prefix) {
  return lm.NextDist(prefix);
}

template <>
inline std::vector<Rat> ModelDist<Rat>(const ToyLm& lm, const std::vector<uint32_t>& prefix) {
  auto exact = lm.NextDistExact(prefix);
  GCD_CHECK(exact.has_value()) << "exact arithmetic requires a table model";
  return *exact;
}

}  // namespace detail

/*!
 * \brief Memoized depth-first enumeration of acceptance probabilities with
 *        live-state pruning.
 */
template <class Num>
class SurvivalEvaluator {
 public:
  SurvivalEvaluator(const ToyLm& lm, std::shared_ptr<const Npda> pda, const Vocab& v,
                    ConditionalOptions opts)
      : lm_(lm), pda_(std::move(pda)), vocab_(v), opts_(opts) {
    GCD_CHECK(lm.VocabSize() == v.Size());
    uint64_t nodes = 1;
    for (uint32_t i = 0; i < opts_.horizon; ++i) {
      if (nodes > opts_.budget / v.Size()) {
        throw BudgetError("enumeration budget exceeded: |V|^horizon too large");
      }
      nodes *= v.Size();
    }
  }

  /*! \brief h(prefix): probability of eventual accepted termination. */
  Num Survival(const std::vector<uint32_t>& prefix) {
    EngineState s = EngineState::Init(pda_);
    uint32_t len = 0;
    bool saw_eos = false;
    for (uint32_t tok : prefix) {
      ++len;
      if (tok == vocab_.EosId()) {
        saw_eos = true;
        break;
      }
      s = StepToken(s, vocab_, tok);
    }
    if (saw_eos) return s.EosAdmissible() ? Num(1) : Num(0);
    if (!s.Live()) return Num(0);
    return H(prefix, s, len);
  }

  /*!
   * \brief Exact conditional next-token distribution
   *        p(v | prefix) * h(prefix v) / h(prefix).
   * \throws Error when h(prefix) == 0 (conditioning on a null event).
   */
  std::vector<Num> DoobNextDist(const std::vector<uint32_t>& prefix) {
    Num h = Survival(prefix);
    if (!(Num(0) < h)) throw Error("conditioning on a null event: h(prefix) = 0");
    std::vector<Num> p = detail::ModelDist<Num>(lm_, prefix);
    std::vector<Num> out(p.size(), Num(0));
    for (uint32_t v = 0; v < p.size(); ++v) {
      if (!(Num(0) < p[v])) continue;
      std::vector<uint32_t> ext = prefix;
      ext.push_back(v);
      Num hv = Survival(ext);
      if (Num(0) < hv) out[v] = p[v] * hv / h;
    }
    return out;
  }

  DistortionReport Distortion(const std::vector<uint32_t>& prefix) {
    EngineState s = EngineState::Init(pda_);
    for (uint32_t tok : prefix) {
      GCD_CHECK(tok != vocab_.EosId()) << "distortion prefix must not contain eos";
      s = StepToken(s, vocab_, tok);
    }
    GCD_CHECK(s.Live()) << "distortion prefix is dead";
    TokenMask mask = AdmissibleTokens(s, vocab_);

    DistortionReport rep;
    rep.horizon = opts_.horizon;
    Num h_prefix = Survival(prefix);
    rep.h_prefix = detail::AsDouble(h_prefix);

    std::vector<Num> p = detail::ModelDist<Num>(lm_, prefix);
    std::vector<Num> hv;
    Num mass_q(0);
    for (uint32_t v = 0; v < vocab_.Size(); ++v) {
      bool adm = (v == vocab_.EosId()) ? mask.eos_bit : mask.bits[v];
      if (!adm) continue;
      rep.admissible.push_back(v);
      std::vector<uint32_t> ext = prefix;
      ext.push_back(v);
      hv.push_back(Survival(ext));
      mass_q += p[v];
    }
    GCD_CHECK(!rep.admissible.empty()) << "no admissible token at distortion prefix";
    GCD_CHECK(Num(0) < mass_q) << "model has zero mass on the admissible set";

    Num h_min = hv[0], h_max = hv[0];
    for (const Num& x : hv) {
      if (x < h_min) h_min = x;
      if (h_max < x) h_max = x;
    }
    rep.h_min = detail::AsDouble(h_min);
    rep.h_max = detail::AsDouble(h_max);
    for (const Num& x : hv) rep.exact_h.push_back(detail::AsExactString(x));
    rep.vacuous = !(Num(0) < h_min);
    if (rep.vacuous) {
      rep.gamma = std::numeric_limits<double>::infinity();
      rep.exact_gamma = "inf";
    } else {
      Num gamma = h_max / h_min;
      rep.gamma = detail::AsDouble(gamma);
      rep.exact_gamma = detail::AsExactString(gamma);
    }
    rep.kl_bound = std::log(rep.gamma);
    rep.tv_bound = std::sqrt(0.5 * rep.kl_bound);

    // q: renormalized restriction; p_E: h-weighted restriction
    Num mass_pe(0);
    for (size_t i = 0; i < rep.admissible.size(); ++i) {
      mass_pe += p[rep.admissible[i]] * hv[i];
    }
    double kl = 0, tv = 0;
    bool kl_infinite = false;
    for (size_t i = 0; i < rep.admissible.size(); ++i) {
      Num qv = p[rep.admissible[i]] / mass_q;
      double q = detail::AsDouble(qv);
      double pe = 0;
      if (Num(0) < mass_pe) {
        pe = detail::AsDouble(p[rep.admissible[i]] * hv[i] / mass_pe);
      }
      tv += 0.5 * std::abs(q - pe);
      if (q > 0) {
        if (pe <= 0) {
          kl_infinite = true;
        } else {
          kl += q * std::log(q / pe);
        }
      }
    }
    rep.kl = kl_infinite ? std::numeric_limits<double>::infinity() : kl;
    rep.tv = tv;
    constexpr double kSlack = 1e-9;
    rep.kl_violated = !rep.vacuous && rep.kl > rep.kl_bound + kSlack;
    rep.tv_violated = !rep.vacuous && rep.tv > rep.tv_bound + kSlack;
    return rep;
  }

  /*! \brief Memoized survival values keyed by token prefix. */
  const std::map<std::vector<uint32_t>, Num>& Table() const { return memo_; }

 private:
  Num H(const std::vector<uint32_t>& prefix, const EngineState& s, uint32_t len) {
    // s: live engine state for the realization of prefix; len = |prefix|
    if (len >= opts_.horizon) return Num(0);
    auto it = memo_.find(prefix);
    if (it != memo_.end()) return it->second;
    std::vector<Num> p = detail::ModelDist<Num>(lm_, prefix);
    Num total(0);
    std::vector<uint32_t> ext = prefix;
    for (uint32_t v = 0; v < p.size(); ++v) {
      if (!(Num(0) < p[v])) continue;
      if (v == vocab_.EosId()) {
        if (s.EosAdmissible()) total += p[v];
        continue;
      }
      EngineState next = StepToken(s, vocab_, v);
      if (!next.Live()) continue;
      ext.push_back(v);
      total += p[v] * H(ext, next, len + 1);
      ext.pop_back();
    }
    memo_[prefix] = total;
    return total;
  }

  const ToyLm& lm_;
  std::shared_ptr<const Npda> pda_;
  const Vocab& vocab_;
  ConditionalOptions opts_;
  std::map<std::vector<uint32_t>, Num> memo_;
};

using ExactSurvival = SurvivalEvaluator<Rat>;
using FloatSurvival = SurvivalEvaluator<double>;

}  // namespace gcd

#endif  // GCD_CONDITIONAL_H_
