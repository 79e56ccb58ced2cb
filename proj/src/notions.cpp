#include "ctrlcheck/notions.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>

namespace ctrlcheck
{

namespace
{

std::string lower(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::string dotted(const std::vector<std::string>& word)
{
    if (word.empty())
        return "ε";
    std::string out;
    for (std::size_t i = 0; i < word.size(); ++i)
        out += (i ? "." : "") + word[i];
    return out;
}

} // namespace

std::string_view to_string(Notion n)
{
    switch (n) {
    case Notion::LC: return "LC";
    case Notion::AC: return "AC";
    case Notion::CR: return "CR";
    case Notion::SC: return "SC";
    case Notion::PB: return "PB";
    case Notion::PBn: return "PBn";
    case Notion::FM: return "FM";
    case Notion::KT: return "KT";
    case Notion::SCn: return "SCn";
    case Notion::FMSub: return "FMSub";
    }
    return "?";
}

std::optional<Notion> parse_notion(std::string_view s)
{
    const auto l = lower(s);
    if (l == "fm_sub" || l == "fm-sub")
        return Notion::FMSub;
    for (Notion n : kAllNotions)
        if (lower(to_string(n)) == l)
            return n;
    return std::nullopt;
}

std::string_view to_string(Status s)
{
    switch (s) {
    case Status::holds: return "holds";
    case Status::fails: return "fails";
    case Status::not_applicable: return "not-applicable";
    }
    return "?";
}

std::optional<Status> parse_status(std::string_view s)
{
    for (Status st : {Status::holds, Status::fails, Status::not_applicable})
        if (to_string(st) == s)
            return st;
    return std::nullopt;
}

std::string_view to_string(WitnessKind k)
{
    switch (k) {
    case WitnessKind::language: return "language";
    case WitnessKind::supervisor_state: return "supervisor-state";
    case WitnessKind::product_state: return "product-state";
    case WitnessKind::transition: return "transition";
    case WitnessKind::transfer: return "transfer";
    case WitnessKind::no_embedding: return "no-embedding";
    }
    return "?";
}

std::optional<WitnessKind> parse_witness_kind(std::string_view s)
{
    for (WitnessKind k : {WitnessKind::language, WitnessKind::supervisor_state, WitnessKind::product_state,
                          WitnessKind::transition, WitnessKind::transfer, WitnessKind::no_embedding})
        if (to_string(k) == s)
            return k;
    return std::nullopt;
}

Verdict check(Notion n, const Automaton& s, const Automaton& p, const CheckOptions& opts)
{
    const auto start = std::chrono::steady_clock::now();
    Verdict v = [&] {
        switch (n) {
        case Notion::LC: return check_lc(s, p, opts);
        case Notion::AC: return check_ac(s, p, opts);
        case Notion::CR: return check_cr(s, p);
        case Notion::SC: return check_sc(s, p, opts);
        case Notion::PB: return check_pb(s, p);
        case Notion::PBn: return check_pbn(s, p);
        case Notion::FM: return check_fm(s, p, opts);
        case Notion::KT: return check_kt(s, p);
        case Notion::SCn: return check_scn(s, p, opts);
        case Notion::FMSub: return check_fm_sub(s, p);
        }
        throw Error("unknown notion");
    }();
    v.time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return v;
}

std::string describe(const Verdict& v)
{
    std::string out = std::string(to_string(v.notion)) + ": " + std::string(to_string(v.status));
    if (v.status == Status::not_applicable && v.reason)
        return out + " (" + *v.reason + ")";
    if (v.status != Status::fails || !v.witness)
        return out;

    const Witness& w = *v.witness;
    out += ", witness";
    switch (w.kind) {
    case WitnessKind::language:
        out += " w=" + dotted(w.word) + " u=" + w.event.value_or("?");
        break;
    case WitnessKind::supervisor_state:
        out += " w=" + dotted(w.word) + " u=" + w.event.value_or("?") + " at " + w.sup_state.value_or("?");
        break;
    case WitnessKind::product_state:
        out += " w=" + dotted(w.word) + " u=" + w.event.value_or("?") + " at (" + w.sup_state.value_or("?") + "," +
               w.plant_state.value_or("?") + ")";
        break;
    case WitnessKind::transition:
        out += " w=" + dotted(w.word) + " u=" + w.event.value_or("?") + " missing " + w.sup_state.value_or("?") +
               " -" + w.event.value_or("?") + "-> " + w.plant_target.value_or("?");
        break;
    case WitnessKind::transfer:
        out += " w=" + dotted(w.word) + " at (" + w.sup_state.value_or("?") + "," + w.plant_state.value_or("?") +
               "): " + w.detail;
        break;
    case WitnessKind::no_embedding:
        out += ": " + w.detail;
        break;
    }
    return out;
}

} // namespace ctrlcheck
