#include "ctrlcheck/lattice.hpp"

#include "ctrlcheck/aut_io.hpp"
#include "verdicts.hpp"

#include <functional>
#include <set>

namespace ctrlcheck
{

namespace
{

/// A relation of the matrix together with the contexts in which it is sound.
struct Rule
{
    LatticeRelation relation;
    std::function<bool(const ContextProfile&, bool supervised)> when;
};

const std::vector<Rule>& matrix_rules()
{
    using C = const ContextProfile&;
    auto always = [](C, bool) { return true; };
    auto s_det = [](C c, bool) { return c.s_deterministic; };
    auto both_det = [](C c, bool) { return c.s_deterministic && c.p_deterministic; };
    auto incl = [](C c, bool) { return c.language_inclusion; };
    auto sub = [](C c, bool sup) { return c.subautomaton && !sup; };
    // FM⊆ ⇒ FM fails for nondeterministic plants; only the deterministic
    // case is asserted here.
    auto sub_p_det = [](C c, bool sup) { return c.subautomaton && !sup && c.p_deterministic; };
    static const std::vector<Rule> rules = {
        {{Notion::FM, Notion::KT, true}, always},    {{Notion::LC, Notion::AC, true}, always},
        {{Notion::FM, Notion::LC, false}, always},   {{Notion::LC, Notion::FM, true}, s_det},
        {{Notion::LC, Notion::CR, true}, both_det},  {{Notion::PB, Notion::PBn, true}, both_det},
        {{Notion::PB, Notion::CR, false}, both_det}, {{Notion::SC, Notion::PB, false}, both_det},
        {{Notion::SCn, Notion::FM, true}, incl},     {{Notion::FMSub, Notion::PBn, false}, sub},
        {{Notion::FMSub, Notion::FM, false}, sub_p_det},
    };
    return rules;
}

bool relation_holds(const LatticeRelation& r, const Verdict& a, const Verdict& b)
{
    return r.equivalence ? a.holds() == b.holds() : (!a.holds() || b.holds());
}

NotionMatrix assemble(const ContextProfile& ctx, bool supervised,
                      const std::function<Verdict(Notion)>& compute, bool relax_scn)
{
    NotionMatrix m;
    m.context = ctx;
    m.supervised = supervised;
    for (Notion n : kAllNotions)
        m.verdicts.emplace(n, compute(n));
    auto errors = consistency_errors(m, relax_scn);
    if (!errors.empty()) {
        std::string msg = "lattice violation:";
        for (const auto& e : errors)
            msg += "\n  " + e;
        throw LatticeViolation(msg);
    }
    return m;
}

} // namespace

ContextProfile classify(const Automaton& s, const Automaton& p, std::size_t det_cap)
{
    ContextProfile c;
    c.s_deterministic = is_deterministic(s);
    c.p_deterministic = is_deterministic(p);
    c.alphabets_equal = s.alphabet() == p.alphabet();
    if (c.alphabets_equal) {
        c.subautomaton = is_subautomaton(s, p);
        c.language_inclusion = c.subautomaton || language_inclusion(s, p, det_cap).included;
    }
    return c;
}

bool applicable_in(Notion n, const ContextProfile& c, bool supervised, bool relax_scn)
{
    switch (n) {
    case Notion::CR:
    case Notion::PB:
        return c.s_deterministic && c.p_deterministic;
    case Notion::SC:
        return c.s_deterministic;
    case Notion::SCn:
        return relax_scn || c.language_inclusion;
    case Notion::FMSub:
        return !supervised && c.subautomaton;
    default:
        return true;
    }
}

bool NotionMatrix::all_applicable_hold() const
{
    for (const auto& [n, v] : verdicts)
        if (v.fails())
            return false;
    return true;
}

bool NotionMatrix::any_fails() const { return !all_applicable_hold(); }

std::vector<std::string> consistency_errors(const NotionMatrix& m, bool relax_scn)
{
    std::vector<std::string> errors;
    for (const auto& [n, v] : m.verdicts)
        if (v.applicable() != applicable_in(n, m.context, m.supervised, relax_scn))
            errors.push_back(describe(v) + " contradicts the context");
    for (const auto& rule : matrix_rules()) {
        if (!rule.when(m.context, m.supervised))
            continue;
        const auto ia = m.verdicts.find(rule.relation.antecedent);
        const auto ib = m.verdicts.find(rule.relation.consequent);
        if (ia == m.verdicts.end() || ib == m.verdicts.end())
            continue;
        const Verdict& a = ia->second;
        const Verdict& b = ib->second;
        if (!a.applicable() || !b.applicable())
            continue;
        if (!relation_holds(rule.relation, a, b))
            errors.push_back(rule.relation.name() + " broken: " + describe(a) + " / " + describe(b));
    }
    return errors;
}

NotionMatrix matrix(const Automaton& s, const Automaton& p, const CheckOptions& opts)
{
    require_same_alphabet(s, p);
    return assemble(
        classify(s, p, opts.det_cap), false, [&](Notion n) { return check(n, s, p, opts); }, opts.relax_scn);
}

NotionMatrix supervised_matrix(const Automaton& s, const Automaton& p, const CheckOptions& opts)
{
    require_same_alphabet(s, p);
    const Automaton sp = product(s, p);
    auto m = assemble(
        classify(sp, p, opts.det_cap), true,
        [&](Notion n) {
            if (n == Notion::FMSub)
                return detail::not_applicable(n, "not defined for a supervised plant");
            return check(n, sp, p, opts);
        },
        opts.relax_scn);
    const Verdict direct = check_lc(s, p, opts);
    if (direct.holds() != m.at(Notion::LC).holds())
        throw LatticeViolation("LC(S,P) and LC(S||P,P) disagree: " + describe(direct) + " / " +
                               describe(m.at(Notion::LC)));
    return m;
}

std::string LatticeRelation::name() const
{
    return std::string(to_string(antecedent)) + (equivalence ? "=" : "=>") + std::string(to_string(consequent));
}

std::vector<LatticeRelation> theorem_relations(int theorem)
{
    using N = Notion;
    switch (theorem) {
    case 1:
        return {{N::FM, N::KT, true}, {N::LC, N::AC, true}, {N::FM, N::LC, false}, {N::KT, N::LC, false}};
    case 2:
        return {{N::LC, N::FM, true}, {N::FM, N::KT, true}, {N::LC, N::KT, true}, {N::LC, N::AC, true}};
    case 3:
        return {{N::LC, N::FM, true},  {N::FM, N::KT, true},  {N::LC, N::CR, true},
                {N::LC, N::AC, true},  {N::PB, N::PBn, true}, {N::SC, N::PB, false},
                {N::PB, N::CR, false}, {N::PB, N::LC, false}};
    case 4:
        return {{N::FM, N::KT, true},       {N::SCn, N::FM, true},      {N::FM, N::LC, false},
                {N::LC, N::AC, true},       {N::FMSub, N::FM, false},   {N::FMSub, N::PBn, false}};
    default:
        throw Error("no theorem " + std::to_string(theorem) + " (expected 1 to 4)");
    }
}

std::string theorem_context(int theorem)
{
    switch (theorem) {
    case 1: return "nondeterministic supervisor, nondeterministic plant";
    case 2: return "deterministic supervisor, nondeterministic plant";
    case 3: return "deterministic supervisor, deterministic plant";
    case 4: return "supervisor is a subautomaton of the plant";
    default: throw Error("no theorem " + std::to_string(theorem) + " (expected 1 to 4)");
    }
}

bool in_theorem_context(int theorem, const ContextProfile& c)
{
    if (!c.alphabets_equal)
        return false;
    switch (theorem) {
    case 1: return true;
    case 2: return c.s_deterministic;
    case 3: return c.s_deterministic && c.p_deterministic;
    case 4: return c.subautomaton;
    default: throw Error("no theorem " + std::to_string(theorem) + " (expected 1 to 4)");
    }
}

TheoremVerifier::TheoremVerifier(int theorem, CheckOptions opts, bool replay_witnesses)
    : opts_(opts), replay_(replay_witnesses)
{
    report_.theorem = theorem;
    for (const auto& r : theorem_relations(theorem))
        report_.relations.push_back({r});
}

void TheoremVerifier::add(const Automaton& s, const Automaton& p)
{
    const std::size_t index = report_.instances;
    const auto ctx = classify(s, p, opts_.det_cap);
    if (!in_theorem_context(report_.theorem, ctx))
        throw ContextMismatch("instance " + std::to_string(index) + " is outside the context of theorem " +
                              std::to_string(report_.theorem) + " (" + theorem_context(report_.theorem) + ")");
    ++report_.instances;

    std::map<Notion, Verdict> verdicts;
    for (const auto& t : report_.relations)
        for (Notion n : {t.relation.antecedent, t.relation.consequent})
            if (!verdicts.count(n))
                verdicts.emplace(n, check(n, s, p, opts_));

    for (auto& t : report_.relations) {
        const Verdict& a = verdicts.at(t.relation.antecedent);
        const Verdict& b = verdicts.at(t.relation.consequent);
        ++t.checked;
        t.antecedent_held += a.holds();
        t.consequent_held += b.holds();
        if (a.applicable() && b.applicable() && relation_holds(t.relation, a, b))
            continue;
        ++t.violations;
        report_.violations.push_back(
            {index, t.relation.name(), describe(a) + " / " + describe(b), write_aut(s), write_aut(p)});
    }

    if (!replay_)
        return;
    for (const auto& [n, v] : verdicts) {
        if (!v.fails())
            continue;
        ++report_.witnesses_checked;
        auto r = replay(v, s, p, opts_);
        if (r.confirmed)
            ++report_.witnesses_confirmed;
        else if (r.inconclusive)
            ++report_.witnesses_inconclusive;
        else
            report_.witness_failures.push_back("instance " + std::to_string(index) + ", " + describe(v) + ": " +
                                               r.message);
    }
}

TheoremReport verify_theorem(int theorem, const std::vector<Instance>& instances, const CheckOptions& opts,
                             bool replay_witnesses)
{
    TheoremVerifier verifier(theorem, opts, replay_witnesses);
    for (const auto& inst : instances)
        verifier.add(inst.supervisor, inst.plant);
    return verifier.report();
}

} // namespace ctrlcheck
