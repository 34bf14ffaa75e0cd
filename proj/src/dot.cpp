#include "dot.hpp"

#include <sstream>

namespace stratprof {

namespace {

std::string payoff_label(const Payoff &payoff) {
    std::string out;
    for (const auto &[agent, u] : payoff) {
        if (!out.empty()) out += "\\n";
        out += agent + ": " + std::to_string(u);
    }
    return out;
}

int emit(std::ostringstream &out, const UnrolledPtr &t, int &counter) {
    int id = counter++;
    switch (t->kind()) {
        case Unrolled::Kind::Leaf:
            out << "  n" << id << " [shape=box, label=\"" << payoff_label(t->payoff()) << "\"];\n";
            break;
        case Unrolled::Kind::Hole:
            out << "  n" << id << " [shape=box, style=dashed, label=\"" << t->hole_def() << "("
                << t->hole_n() << ")\"];\n";
            break;
        case Unrolled::Kind::Node: {
            out << "  n" << id << " [label=\"" << t->agent() << "\"];\n";
            int l = emit(out, t->left(), counter);
            int r = emit(out, t->right(), counter);
            bool left_chosen = t->choice() == Choice::Left;
            out << "  n" << id << " -> n" << l << (left_chosen ? " [penwidth=2.0]" : "") << ";\n";
            out << "  n" << id << " -> n" << r << (left_chosen ? "" : " [penwidth=2.0]") << ";\n";
            break;
        }
    }
    return id;
}

UnrolledPtr as_unrolled(const FiniteProfilePtr &t) {
    if (t->is_leaf()) return Unrolled::leaf(t->payoff());
    return Unrolled::node(t->agent(), t->choice(), as_unrolled(t->left()), as_unrolled(t->right()));
}

}  // namespace

std::string render_dot(const UnrolledPtr &tree, const std::string &graph_name) {
    std::ostringstream out;
    out << "digraph " << graph_name << " {\n";
    out << "  node [fontname=\"Helvetica\"];\n";
    int counter = 0;
    emit(out, tree, counter);
    out << "}\n";
    return out.str();
}

std::string render_dot(const FiniteProfilePtr &tree, const std::string &graph_name) {
    return render_dot(as_unrolled(tree), graph_name);
}

}  // namespace stratprof
