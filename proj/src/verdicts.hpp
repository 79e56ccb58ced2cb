#pragma once

// Internal helpers shared by the checker translation units.

#include "ctrlcheck/notions.hpp"

namespace ctrlcheck::detail
{

inline Verdict holds(Notion n)
{
    Verdict v;
    v.notion = n;
    v.status = Status::holds;
    return v;
}

inline Verdict fails(Notion n, Witness w)
{
    Verdict v;
    v.notion = n;
    v.status = Status::fails;
    v.witness = std::move(w);
    return v;
}

inline Verdict not_applicable(Notion n, std::string reason)
{
    Verdict v;
    v.notion = n;
    v.status = Status::not_applicable;
    v.reason = std::move(reason);
    return v;
}

/// Whether some state of `states` enables `e`.
inline bool any_enables(const Automaton& a, const std::vector<StateId>& states, EventId e)
{
    for (StateId q : states)
        if (a.enables(q, e))
            return true;
    return false;
}

} // namespace ctrlcheck::detail
