#pragma once

#include <map>
#include <string>
#include <vector>

namespace stratprof {

// Equation system for lazy binary trees: each definition is either the empty
// tree or a pair of references to other definitions.  The greatest solution
// of such a system is a finite or infinite binary tree.
struct LazyTreeSystem {
    struct Def {
        bool nil = true;
        std::string left, right;  // meaningful when !nil
    };
    std::vector<std::pair<std::string, Def>> defs;
    std::string root;

    const Def *find(const std::string &name) const;
    bool resolved() const;  // every referenced name is defined
};

enum class BuiltinTree { Zig, Zag, Backbone };

// The three stock equation systems: zig = nil . zag, zag = zig . nil,
// backbone = backbone . nil.
LazyTreeSystem builtin_tree(BuiltinTree which);

// Infiniteness decided as a greatest fixpoint over the definition graph:
// every non-nil definition starts out assumed infinite, and a definition is
// retracted once both its children are retracted or nil.  The assignment that
// survives is exactly the set of definitions denoting infinite trees, because
// a tree with finitely many distinct subtrees is infinite iff its definition
// graph reaches a cycle through node children.
struct InfiniteVerdict {
    bool root_infinite = false;
    std::map<std::string, bool> by_def;
    int rounds = 0;  // retraction rounds until stable; at most |defs|
};

InfiniteVerdict is_infinite(const LazyTreeSystem &sys);

}  // namespace stratprof
