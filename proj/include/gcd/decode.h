/*!
 *  Copyright (c) 2026 by Contributors
 * \file gcd/decode.h
 * \brief Hard-masked constrained sampling, beam search over masked
 *        log-probabilities, and the oracle-invariance differential check.
 */
#ifndef GCD_DECODE_H_
#define GCD_DECODE_H_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "gcd/counters.h"
#include "gcd/toylm.h"
#include "gcd/vocab.h"

namespace gcd {

struct DecodeConfig {
  uint32_t beam_width = 1;
  uint32_t max_len = 64;
  uint64_t seed = 0;
};

struct StepTrace {
  uint32_t t;                  // 1-based step index
  uint32_t admissible_count;   // |A_t| including the end signal when admissible
  uint32_t chosen;             // token id
  double pre_mask_prob;        // model probability of the chosen token
  double post_mask_prob;       // masked probability of the chosen token
  CounterVector counters;      // cumulative per-hypothesis snapshot
  uint64_t t_update_ns = 0;    // engine advance phase
  uint64_t t_mask_ns = 0;      // mask enumeration + renormalization phase
};

/*!
 * \brief Masked next-token distribution: softmax restricted to the admissible
 *        set. Inadmissible entries are excluded from the normalizing sum, not
 *        pushed through a sentinel float, so the masked entries are exactly 0.
 * \throws DeadEndError when nothing is admissible or the model puts zero mass
 *         on every admissible token.
 */
std::vector<double> HardMask(const std::vector<double>& logits, const TokenMask& mask,
                             uint32_t eos_id);

struct SampleResult {
  std::vector<uint32_t> tokens;  // includes the final eos when terminated
  bool terminated = false;       // false: max_len exhausted, excluded from
                                 // soundness accounting but reported
  std::vector<StepTrace> traces;
  CounterVector counters;
};

/*! \brief Autoregressive hard-masked sampling loop. */
SampleResult SampleConstrained(const ToyLm& lm, std::shared_ptr<const Npda> pda, const Vocab& v,
                               const DecodeConfig& cfg);

struct BeamHypothesis {
  std::vector<uint32_t> tokens;
  double log_prob = 0.0;  // sum of masked log-probabilities
  bool terminated = false;
  std::vector<StepTrace> traces;
  CounterVector counters;
};

/*! \brief Per-step accounting: one delta per live hypothesis, plus the total
 *         accumulated through an independent sink. The two routes must agree
 *         exactly; the acceptance suite asserts it. */
struct BeamStepRecord {
  std::vector<CounterVector> per_hypothesis;
  CounterVector total;
};

struct BeamResult {
  std::vector<BeamHypothesis> hypotheses;  // best first
  CounterVector total_counters;            // accumulated across all expansions
  std::vector<BeamStepRecord> step_records;
};

/*!
 * \brief Deterministic beam search over masked log-probabilities. Each
 *        hypothesis owns an independent engine state and counter vector, so
 *        totals are sums of per-hypothesis work.
 */
BeamResult BeamDecode(const ToyLm& lm, std::shared_ptr<const Npda> pda, const Vocab& v,
                      const DecodeConfig& cfg);

/*! \brief Tokens named over terminal names, so two grammars can bind them. */
struct VocabSpec {
  struct TokenSpec {
    std::string name;
    std::vector<std::string> terminal_names;
  };
  std::vector<TokenSpec> tokens;  // eos is implicit and always last

  static VocabSpec SingletonOverUnion(const Cfg& g1, const Cfg& g2);
};

struct InvarianceReport {
  bool mismatch = false;
  std::vector<std::string> prefix;  // token names where the first mismatch occurred
  std::string detail;
  uint64_t prefixes_checked = 0;
};

/*!
 * \brief Exhaustively compare token masks of two grammars on all live token
 *        prefixes up to the given depth. Language-equivalent grammars must
 *        never mismatch; a mismatch is a report outcome, not an error.
 */
InvarianceReport OracleInvarianceCheck(const Cfg& g1, const Cfg& g2, const VocabSpec& spec,
                                       uint32_t max_depth);

}  // namespace gcd

#endif  // GCD_DECODE_H_
