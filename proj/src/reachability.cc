/*!
 *  Copyright (c) 2026 by Contributors
 * \file reachability.cc
 */
#include "gcd/reachability.h"

#include <algorithm>
#include <deque>
#include <set>
#include <tuple>
#include <unordered_set>

#include "gcd/error.h"

namespace gcd {

using detail::Generation;
using detail::NodeRef;
using detail::TailEdge;
using detail::TailNode;

namespace {

constexpr NodeRef kBase{};  // {nullptr, 0}: the stack-base acceptance node

using EdgeKey = std::tuple<StackSym, const Generation*, uint32_t>;

EdgeKey KeyOf(const TailEdge& e) { return {e.sym, e.to.gen, e.to.idx}; }

}  // namespace

/*!
 * \brief Epsilon-closure worker. Mutable nodes are the control states plus at
 *        most one fresh auxiliary node per call transition; everything older
 *        is frozen and only read.
 *
 * Rules, each a monotone edge-propagation step:
 *  - choice/exit/start (no stack action): target node simulates source node;
 *  - call (push r): once the source is inhabited, add callee --r--> aux and
 *    let aux simulate the source, so the pushed frame sits on every stack the
 *    source had;
 *  - return (pop r): every edge (exit, r, x) lets the continuation state
 *    simulate x.
 * The closure is a least fixpoint over a finite edge universe, so the result
 * is independent of worklist order (asserted by a dedicated confluence test).
 */
class Saturator {
 public:
  Saturator(const Npda& pda, EngineOptions opts, CounterVector* counters)
      : pda_(pda), opts_(opts), counters_(counters) {
    size_t q = pda.NumStates();
    size_t p = pda.PushTransitions().size();
    head_.resize(q);
    head_set_.resize(q + p);
    subscribers_.resize(q + p);
    gen_ = std::make_shared<Generation>();
    gen_->nodes.resize(p);  // slot per call transition, canonical identity
    // static simulation pairs for stack-action-free epsilon transitions
    for (const NoopTransition& t : pda.NoopTransitions()) {
      Subscribe(t.to, t.from);
    }
  }

  void SetParent(std::shared_ptr<const Generation> parent, uint64_t serial) {
    gen_->parent = std::move(parent);
    gen_->serial = serial;
  }

  /*! \brief Seed one head edge (before or during the run). */
  void AddHeadEdge(uint32_t control, const TailEdge& e) { Enqueue(control, e); Drain(); }

  void Drain() {
    while (!work_.empty()) {
      auto [node, edge] = (opts_.order == EngineOptions::WorklistOrder::kFifo)
                              ? PopFront()
                              : PopBack();
      if (counters_) counters_->saturation_iterations++;
      Insert(node, edge);
    }
  }

  /*! \brief Freeze auxiliary nodes and move the result out. */
  void Finish(ConfigSet* out) {
    out->head_edges_ = std::move(head_);
    out->tails_ = aux_nodes_created_ ? std::shared_ptr<const Generation>(gen_)
                                     : gen_->parent;  // nothing new this step
  }

 private:
  std::pair<uint32_t, TailEdge> PopFront() {
    auto v = work_.front();
    work_.pop_front();
    return v;
  }
  std::pair<uint32_t, TailEdge> PopBack() {
    auto v = work_.back();
    work_.pop_back();
    return v;
  }

  bool IsControl(uint32_t node) const { return node < pda_.NumStates(); }

  std::vector<TailEdge>& EdgesOf(uint32_t node) {
    if (IsControl(node)) return head_[node];
    return gen_->nodes[node - pda_.NumStates()].edges;
  }

  void Enqueue(uint32_t node, const TailEdge& e) { work_.push_back({node, e}); }

  void Insert(uint32_t node, const TailEdge& e) {
    if (!head_set_[node].insert(KeyOf(e)).second) return;
    std::vector<TailEdge>& edges = EdgesOf(node);
    bool first = edges.empty();
    edges.push_back(e);
    if (counters_) counters_->engine_edges_touched++;

    for (uint32_t sub : subscribers_[node]) Enqueue(sub, e);

    if (IsControl(node)) {
      if (first) {
        // call rule: the source now carries at least one configuration
        for (uint32_t ti : pda_.PushFrom()[node]) {
          const PushTransition& t = pda_.PushTransitions()[ti];
          aux_nodes_created_ = true;
          Enqueue(t.to, TailEdge{t.push, NodeRef{gen_.get(), ti}});
          Subscribe(static_cast<uint32_t>(pda_.NumStates() + ti), node);
        }
      }
      // return rule
      for (uint32_t ti : pda_.PopFrom()[node]) {
        const PopTransition& t = pda_.PopTransitions()[ti];
        if (t.pop == e.sym) SubscribeTarget(t.to, e.to);
      }
    }
  }

  void Subscribe(uint32_t dst, uint32_t src) {
    if (!pair_set_.insert((static_cast<uint64_t>(dst) << 32) | src).second) return;
    subscribers_[src].push_back(dst);
    for (const TailEdge& e : EdgesOf(src)) Enqueue(dst, e);
  }

  void SubscribeTarget(uint32_t dst, const NodeRef& target) {
    GCD_CHECK(!(target == kBase)) << "return symbol edge cannot reach the base node";
    if (target.gen == gen_.get()) {
      Subscribe(dst, static_cast<uint32_t>(pda_.NumStates() + target.idx));
      return;
    }
    // frozen node: edges are fixed, copy once
    if (!frozen_pairs_.insert({dst, target.gen, target.idx}).second) return;
    for (const TailEdge& e : target.gen->nodes[target.idx].edges) Enqueue(dst, e);
  }

  const Npda& pda_;
  EngineOptions opts_;
  CounterVector* counters_;

  std::vector<std::vector<TailEdge>> head_;
  std::vector<std::set<EdgeKey>> head_set_;   // per mutable node
  std::vector<std::vector<uint32_t>> subscribers_;
  std::set<uint64_t> pair_set_;
  std::set<std::tuple<uint32_t, const Generation*, uint32_t>> frozen_pairs_;
  std::shared_ptr<Generation> gen_;
  bool aux_nodes_created_ = false;
  std::deque<std::pair<uint32_t, TailEdge>> work_;
};

bool ConfigSet::Empty() const {
  for (const auto& edges : head_edges_) {
    if (!edges.empty()) return false;
  }
  return true;
}

bool ConfigSet::Contains(uint32_t state, const std::vector<StackSym>& stack) const {
  GCD_CHECK(state < head_edges_.size());
  GCD_CHECK(!stack.empty() && stack.back() == kStackBottom) << "stack must end with bottom";
  std::vector<NodeRef> frontier;
  std::set<std::pair<const Generation*, uint32_t>> seen;
  for (const TailEdge& e : head_edges_[state]) {
    if (e.sym == stack[0] && seen.insert({e.to.gen, e.to.idx}).second) frontier.push_back(e.to);
  }
  for (size_t i = 1; i < stack.size(); ++i) {
    std::vector<NodeRef> next;
    std::set<std::pair<const Generation*, uint32_t>> next_seen;
    for (const NodeRef& n : frontier) {
      if (n == NodeRef{}) continue;  // base node has no outgoing edges
      for (const TailEdge& e : n.gen->nodes[n.idx].edges) {
        if (e.sym == stack[i] && next_seen.insert({e.to.gen, e.to.idx}).second) {
          next.push_back(e.to);
        }
      }
    }
    frontier = std::move(next);
  }
  for (const NodeRef& n : frontier) {
    if (n == NodeRef{}) return true;
  }
  return false;
}

ConfigSet::Size ConfigSet::RepresentationSize() const {
  uint64_t nodes = 0, edges = 0;
  std::set<std::pair<const Generation*, uint32_t>> seen;
  std::deque<NodeRef> work;
  auto visit = [&](const NodeRef& n) {
    if (seen.insert({n.gen, n.idx}).second) {
      ++nodes;
      if (!(n == NodeRef{})) work.push_back(n);
    }
  };
  for (uint32_t q = 0; q < head_edges_.size(); ++q) {
    if (head_edges_[q].empty()) continue;
    ++nodes;
    for (const TailEdge& e : head_edges_[q]) {
      ++edges;
      visit(e.to);
    }
  }
  while (!work.empty()) {
    NodeRef n = work.front();
    work.pop_front();
    for (const TailEdge& e : n.gen->nodes[n.idx].edges) {
      ++edges;
      visit(e.to);
    }
  }
  return {nodes, edges};
}

std::vector<uint64_t> ConfigSet::MembershipSignature() const {
  // canonical node ids: control states by id, tail nodes by (generation
  // serial, call-site slot); hash every reachable edge under them
  auto mix = [](uint64_t h, uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  };
  auto node_id = [&](const NodeRef& n) -> uint64_t {
    if (n == NodeRef{}) return 0;
    return ((n.gen->serial + 1) << 20) | (n.idx + 1);
  };
  std::vector<uint64_t> sig;
  std::set<std::pair<const Generation*, uint32_t>> seen;
  std::deque<NodeRef> work;
  auto visit = [&](const NodeRef& n) {
    if (n == NodeRef{}) return;
    if (seen.insert({n.gen, n.idx}).second) work.push_back(n);
  };
  for (uint32_t q = 0; q < head_edges_.size(); ++q) {
    std::vector<uint64_t> hs;
    for (const TailEdge& e : head_edges_[q]) {
      hs.push_back(mix(mix(q, e.sym), node_id(e.to)));
      visit(e.to);
    }
    std::sort(hs.begin(), hs.end());
    uint64_t acc = q + 1;
    for (uint64_t h : hs) acc = mix(acc, h);
    sig.push_back(acc);
  }
  std::vector<uint64_t> tail_hashes;
  while (!work.empty()) {
    NodeRef n = work.front();
    work.pop_front();
    std::vector<uint64_t> hs;
    for (const TailEdge& e : n.gen->nodes[n.idx].edges) {
      hs.push_back(mix(mix(node_id(n), e.sym), node_id(e.to)));
      visit(e.to);
    }
    std::sort(hs.begin(), hs.end());
    uint64_t acc = node_id(n);
    for (uint64_t h : hs) acc = mix(acc, h);
    tail_hashes.push_back(acc);
  }
  std::sort(tail_hashes.begin(), tail_hashes.end());
  sig.insert(sig.end(), tail_hashes.begin(), tail_hashes.end());
  return sig;
}

EngineState EngineState::Init(std::shared_ptr<const Npda> pda, EngineOptions opts,
                              CounterVector* counters) {
  GCD_CHECK(pda != nullptr);
  EngineState s;
  s.pda_ = std::move(pda);
  s.opts_ = opts;
  Saturator sat(*s.pda_, opts, counters);
  sat.SetParent(nullptr, 0);
  sat.AddHeadEdge(s.pda_->Initial(), TailEdge{kStackBottom, NodeRef{}});
  sat.Finish(&s.configs_);
  s.consumed_ = 0;
  s.live_ = !s.configs_.Empty();
  return s;
}

EngineState EngineState::StepTerminal(uint32_t terminal, CounterVector* counters) const {
  GCD_CHECK(terminal < pda_->Grammar().NumTerminals()) << "terminal id out of range";
  EngineState next;
  next.pda_ = pda_;
  next.opts_ = opts_;
  next.consumed_ = consumed_ + 1;
  Saturator sat(*pda_, opts_, counters);
  sat.SetParent(configs_.tails_, next.consumed_);
  for (uint32_t ti : pda_->TerminalByInput()[terminal]) {
    const TerminalTransition& t = pda_->TerminalTransitions()[ti];
    for (const TailEdge& e : configs_.head_edges_[t.from]) {
      sat.AddHeadEdge(t.to, e);
    }
  }
  sat.Drain();
  sat.Finish(&next.configs_);
  next.live_ = !next.configs_.Empty();
  return next;
}

std::vector<uint32_t> EngineState::NextTerminals() const {
  std::vector<uint32_t> out;
  const auto& by_input = pda_->TerminalByInput();
  for (uint32_t a = 0; a < by_input.size(); ++a) {
    for (uint32_t ti : by_input[a]) {
      if (configs_.Inhabited(pda_->TerminalTransitions()[ti].from)) {
        out.push_back(a);
        break;
      }
    }
  }
  return out;
}

bool EngineState::EosAdmissible() const {
  for (const TailEdge& e : configs_.head_edges_[pda_->Accepting()]) {
    if (e.sym == kStackBottom && e.to == NodeRef{}) return true;
  }
  return false;
}

}  // namespace gcd
