// Checkers for the notions that quantify over words and reached states:
// LC, AC, FM, KT, SCn, FM⊆, plus language inclusion.
//
// Every search is breadth-first, expanding events in ascending id order, so
// the first violation found carries the shortest, lexicographically least
// word. Among violations on the same word the least uncontrollable event
// wins.

#include "verdicts.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

namespace ctrlcheck
{

using detail::any_enables;

namespace
{

std::vector<StateId> step(const Automaton& a, const std::vector<StateId>& from, EventId e)
{
    EventId ev[] = {e};
    return post(a, from, ev);
}

/// Breadth-first search over nodes of type Node with recorded access words.
template <typename Node>
class WordSearch
{
public:
    explicit WordSearch(std::size_t cap, std::string what) : cap_(cap), what_(std::move(what)) {}

    bool visit(Node n, Word w)
    {
        if (seen_.count(n))
            return false;
        if (seen_.size() >= cap_)
            throw StateExplosion(what_ + " exceeds " + std::to_string(cap_) + " states");
        seen_.insert(n);
        queue_.emplace_back(std::move(n), std::move(w));
        return true;
    }

    bool empty() const { return queue_.empty(); }

    std::pair<Node, Word> pop()
    {
        auto front = std::move(queue_.front());
        queue_.pop_front();
        return front;
    }

private:
    std::size_t cap_;
    std::string what_;
    std::set<Node> seen_;
    std::deque<std::pair<Node, Word>> queue_;
};

Word extend(const Word& w, EventId e)
{
    Word out = w;
    out.push_back(e);
    return out;
}

Witness language_witness(const Alphabet& sigma, const Word& w, EventId u)
{
    Witness wit;
    wit.kind = WitnessKind::language;
    wit.word = event_names(sigma, w);
    wit.event = sigma.name(u);
    Word wu = extend(w, u);
    wit.detail = "'" + format_word(sigma, wu) + "' is in L(P) but not in L(S)";
    return wit;
}

/// The (q, Y) search shared by FM and SCn.
Verdict fm_search(Notion tag, const Automaton& s, const Automaton& p, const CheckOptions& opts)
{
    const auto& sigma = s.alphabet();
    const auto unc = sigma.uncontrollable_events();
    using Node = std::pair<StateId, std::vector<StateId>>;
    WordSearch<Node> search(opts.det_cap, "supervisor x determinized plant search");
    search.visit({s.initial(), {p.initial()}}, {});
    while (!search.empty()) {
        auto [node, w] = search.pop();
        const auto& [q, ys] = node;
        for (EventId u : unc)
            if (any_enables(p, ys, u) && !s.enables(q, u)) {
                Witness wit;
                wit.kind = WitnessKind::supervisor_state;
                wit.word = event_names(sigma, w);
                wit.event = sigma.name(u);
                wit.sup_state = s.state_name(q);
                wit.detail = "'" + format_word(sigma, extend(w, u)) + "' is in L(P) but supervisor state " +
                             s.state_name(q) + " reached on '" + format_word(sigma, w) + "' disables " +
                             sigma.name(u);
                return detail::fails(tag, std::move(wit));
            }
        for (EventId e = 0; e < sigma.size(); ++e) {
            auto succ = s.successors(q, e);
            if (succ.empty())
                continue;
            auto ys2 = step(p, ys, e);
            if (ys2.empty())
                continue;
            for (StateId q2 : succ)
                search.visit({q2, ys2}, extend(w, e));
        }
    }
    return detail::holds(tag);
}

} // namespace

Verdict check_lc(const Automaton& s, const Automaton& p, const CheckOptions& opts)
{
    require_same_alphabet(s, p);
    const auto& sigma = s.alphabet();
    const auto ds = determinize(s, opts.det_cap);
    const auto dp = determinize(p, opts.det_cap);
    const auto prod = product_with_pairs(ds.automaton, dp.automaton);
    const auto words = access_words(prod.automaton);

    std::vector<StateId> order(prod.pairs.size());
    std::iota(order.begin(), order.end(), StateId{0});
    std::sort(order.begin(), order.end(), [&](StateId a, StateId b) {
        const Word& wa = *words[a];
        const Word& wb = *words[b];
        if (wa.size() != wb.size())
            return wa.size() < wb.size();
        return wa < wb;
    });

    const auto unc = sigma.uncontrollable_events();
    for (StateId id : order) {
        auto [x, y] = prod.pairs[id];
        for (EventId u : unc)
            if (dp.automaton.enables(y, u) && !ds.automaton.enables(x, u))
                return detail::fails(Notion::LC, language_witness(sigma, *words[id], u));
    }
    return detail::holds(Notion::LC);
}

Verdict check_ac(const Automaton& s, const Automaton& p, const CheckOptions& opts)
{
    require_same_alphabet(s, p);
    const auto& sigma = s.alphabet();
    const auto unc = sigma.uncontrollable_events();
    using Node = std::pair<std::vector<StateId>, std::vector<StateId>>;
    WordSearch<Node> search(opts.det_cap, "subset pair search");
    search.visit({{s.initial()}, {p.initial()}}, {});
    while (!search.empty()) {
        auto [node, w] = search.pop();
        const auto& [xs, ys] = node;
        for (EventId u : unc)
            if (any_enables(p, ys, u) && !any_enables(s, xs, u))
                return detail::fails(Notion::AC, language_witness(sigma, w, u));
        for (EventId e = 0; e < sigma.size(); ++e) {
            auto xs2 = step(s, xs, e);
            if (xs2.empty())
                continue;
            auto ys2 = step(p, ys, e);
            if (ys2.empty())
                continue;
            search.visit({std::move(xs2), std::move(ys2)}, extend(w, e));
        }
    }
    return detail::holds(Notion::AC);
}

Verdict check_fm(const Automaton& s, const Automaton& p, const CheckOptions& opts)
{
    require_same_alphabet(s, p);
    return fm_search(Notion::FM, s, p, opts);
}

Verdict check_kt(const Automaton& s, const Automaton& p)
{
    require_same_alphabet(s, p);
    const auto& sigma = s.alphabet();
    const auto unc = sigma.uncontrollable_events();
    using Node = std::pair<StateId, StateId>;
    WordSearch<Node> search(s.num_states() * p.num_states() + 1, "product search");
    search.visit({s.initial(), p.initial()}, {});
    while (!search.empty()) {
        auto [node, w] = search.pop();
        auto [qs, qp] = node;
        for (EventId u : unc)
            if (p.enables(qp, u) && !s.enables(qs, u)) {
                Witness wit;
                wit.kind = WitnessKind::product_state;
                wit.word = event_names(sigma, w);
                wit.event = sigma.name(u);
                wit.sup_state = s.state_name(qs);
                wit.plant_state = p.state_name(qp);
                wit.detail = "reachable product state (" + s.state_name(qs) + "," + p.state_name(qp) +
                             ") disables " + sigma.name(u) + " which the plant enables";
                return detail::fails(Notion::KT, std::move(wit));
            }
        for (EventId e = 0; e < sigma.size(); ++e)
            for (StateId qs2 : s.successors(qs, e))
                for (StateId qp2 : p.successors(qp, e))
                    search.visit({qs2, qp2}, extend(w, e));
    }
    return detail::holds(Notion::KT);
}

Verdict check_scn(const Automaton& s, const Automaton& p, const CheckOptions& opts)
{
    require_same_alphabet(s, p);
    if (!opts.relax_scn) {
        auto incl = language_inclusion(s, p, opts.det_cap);
        if (!incl.included) {
            std::string w;
            for (const auto& e : *incl.counterexample)
                w += (w.empty() ? "" : " ") + e;
            return detail::not_applicable(Notion::SCn, "L(S) is not included in L(P): '" + w + "' is a counterexample");
        }
    }
    return fm_search(Notion::SCn, s, p, opts);
}

Verdict check_fm_sub(const Automaton& s, const Automaton& p)
{
    if (!is_subautomaton(s, p))
        return detail::not_applicable(Notion::FMSub, "supervisor is not a subautomaton of the plant");

    const auto& sigma = s.alphabet();
    const auto unc = sigma.uncontrollable_events();
    const auto words = access_words(s);

    std::vector<StateId> order;
    for (StateId q = 0; q < s.num_states(); ++q)
        if (words[q])
            order.push_back(q);
    std::sort(order.begin(), order.end(), [&](StateId a, StateId b) {
        const Word& wa = *words[a];
        const Word& wb = *words[b];
        if (wa.size() != wb.size())
            return wa.size() < wb.size();
        return wa < wb;
    });

    for (StateId q : order) {
        const StateId qp = *p.find_state(s.state_name(q));
        for (EventId u : unc)
            for (StateId tp : p.successors(qp, u)) {
                auto ts = s.find_state(p.state_name(tp));
                if (ts && s.has_transition(q, u, *ts))
                    continue;
                Witness wit;
                wit.kind = WitnessKind::transition;
                wit.word = event_names(sigma, *words[q]);
                wit.event = sigma.name(u);
                wit.sup_state = s.state_name(q);
                wit.plant_state = s.state_name(q);
                wit.plant_target = p.state_name(tp);
                wit.detail = "plant transition " + s.state_name(q) + " -" + sigma.name(u) + "-> " +
                             p.state_name(tp) + " is missing from the supervisor";
                return detail::fails(Notion::FMSub, std::move(wit));
            }
    }
    return detail::holds(Notion::FMSub);
}

InclusionResult language_inclusion(const Automaton& s, const Automaton& p, std::size_t det_cap)
{
    require_same_alphabet(s, p);
    const auto& sigma = s.alphabet();
    using Node = std::pair<std::vector<StateId>, std::vector<StateId>>;
    WordSearch<Node> search(det_cap, "inclusion search");
    search.visit({{s.initial()}, {p.initial()}}, {});
    while (!search.empty()) {
        auto [node, w] = search.pop();
        const auto& [xs, ys] = node;
        if (ys.empty())
            return {false, event_names(sigma, w)};
        for (EventId e = 0; e < sigma.size(); ++e) {
            auto xs2 = step(s, xs, e);
            if (xs2.empty())
                continue;
            search.visit({std::move(xs2), step(p, ys, e)}, extend(w, e));
        }
    }
    return {true, std::nullopt};
}

} // namespace ctrlcheck
