#pragma once

#include <string>
#include <vector>

#include "frs/limits.hpp"

namespace frs {

struct SymbolDecl {
    std::string name;
    int arity = 0;

    friend bool operator==(const SymbolDecl&, const SymbolDecl&) = default;
};

// A first-order signature: named relation and function symbols with arities.
// Function arity 0 denotes a constant. Names must be pairwise distinct
// across both symbol kinds.
struct Signature {
    std::vector<SymbolDecl> relations;
    std::vector<SymbolDecl> functions;

    void validate(const Limits& limits = Limits::defaults()) const;

    // Index of a symbol by name, or -1 when absent.
    int rel_index(const std::string& name) const;
    int fun_index(const std::string& name) const;

    friend bool operator==(const Signature&, const Signature&) = default;
};

} // namespace frs
