#include "lazy_trees.hpp"

namespace stratprof {

const LazyTreeSystem::Def *LazyTreeSystem::find(const std::string &name) const {
    for (const auto &[n, d] : defs)
        if (n == name) return &d;
    return nullptr;
}

bool LazyTreeSystem::resolved() const {
    if (!find(root)) return false;
    for (const auto &[n, d] : defs) {
        (void)n;
        if (!d.nil && (!find(d.left) || !find(d.right))) return false;
    }
    return true;
}

LazyTreeSystem builtin_tree(BuiltinTree which) {
    LazyTreeSystem sys;
    auto nil = LazyTreeSystem::Def{true, "", ""};
    auto node = [](std::string l, std::string r) {
        return LazyTreeSystem::Def{false, std::move(l), std::move(r)};
    };
    switch (which) {
        case BuiltinTree::Zig:
        case BuiltinTree::Zag:
            sys.defs = {{"zig", node("nil", "zag")}, {"zag", node("zig", "nil")}, {"nil", nil}};
            sys.root = which == BuiltinTree::Zig ? "zig" : "zag";
            break;
        case BuiltinTree::Backbone:
            sys.defs = {{"backbone", node("backbone", "nil")}, {"nil", nil}};
            sys.root = "backbone";
            break;
    }
    return sys;
}

InfiniteVerdict is_infinite(const LazyTreeSystem &sys) {
    InfiniteVerdict verdict;
    for (const auto &[name, def] : sys.defs) verdict.by_def[name] = !def.nil;

    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto &[name, def] : sys.defs) {
            if (def.nil || !verdict.by_def[name]) continue;
            if (!verdict.by_def[def.left] && !verdict.by_def[def.right]) {
                verdict.by_def[name] = false;
                changed = true;
            }
        }
        if (changed) ++verdict.rounds;
    }
    verdict.root_infinite = verdict.by_def[sys.root];
    return verdict;
}

}  // namespace stratprof
