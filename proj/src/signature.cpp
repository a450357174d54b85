#include "frs/signature.hpp"

#include <unordered_set>

#include "frs/errors.hpp"

namespace frs {

void Signature::validate(const Limits& limits) const {
    std::unordered_set<std::string> seen;
    for (const auto& r : relations) {
        if (r.name.empty()) throw MalformedError("relation symbol with empty name");
        if (r.arity < 1) throw MalformedError("relation '" + r.name + "' must have arity >= 1");
        if (r.arity > limits.max_arity)
            throw BudgetError("relation '" + r.name + "' exceeds arity bound");
        if (!seen.insert(r.name).second)
            throw MalformedError("duplicate symbol name: " + r.name);
    }
    for (const auto& f : functions) {
        if (f.name.empty()) throw MalformedError("function symbol with empty name");
        if (f.arity < 0) throw MalformedError("function '" + f.name + "' has negative arity");
        if (f.arity > limits.max_arity)
            throw BudgetError("function '" + f.name + "' exceeds arity bound");
        if (!seen.insert(f.name).second)
            throw MalformedError("duplicate symbol name: " + f.name);
    }
}

int Signature::rel_index(const std::string& name) const {
    for (size_t i = 0; i < relations.size(); ++i)
        if (relations[i].name == name) return static_cast<int>(i);
    return -1;
}

int Signature::fun_index(const std::string& name) const {
    for (size_t i = 0; i < functions.size(); ++i)
        if (functions[i].name == name) return static_cast<int>(i);
    return -1;
}

} // namespace frs
