#include "render.hpp"

#include "gradeq/expr.hpp"

namespace gradeq::cli {

std::string render_word(const Word& word, const std::vector<std::string>& alphabet) {
    if (word.empty()) {
        return "ε";
    }
    std::string out;
    for (std::size_t k = 0; k < word.size(); ++k) {
        out += (k ? "." : "") + alphabet.at(word[k]);
    }
    return out;
}

std::string render_label_set(const LabelSet& set, const std::vector<std::string>& alphabet) {
    std::string out = "{";
    for (std::size_t k = 0; k < set.size(); ++k) {
        out += (k ? "," : "") + alphabet.at(set[k]);
    }
    return out + "}";
}

namespace {

void print_tree(std::ostream& out, const MoveTree& tree, const std::vector<std::string>& alphabet, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    out << pad << "at (" << to_string(tree.left) << ", " << to_string(tree.right) << "): Spoiler plays "
        << alphabet.at(tree.label) << " on the " << (tree.side == Side::Left ? "left" : "right") << " to "
        << to_string(tree.chosen);
    if (tree.replies.empty()) {
        out << ", no answer\n";
        return;
    }
    out << "\n";
    for (const auto& r : tree.replies) {
        print_tree(out, r, alphabet, indent + 1);
    }
}

} // namespace

void print_witness(std::ostream& out, const Witness& witness, const std::vector<std::string>& alphabet) {
    std::visit(
        [&](const auto& w) {
            using T = std::decay_t<decltype(w)>;
            if constexpr (std::is_same_v<T, WordWitness>) {
                out << "witness: trace " << render_word(w.word, alphabet) << " of one side only\n";
            } else if constexpr (std::is_same_v<T, WordProbabilityWitness>) {
                out << "witness: word " << render_word(w.word, alphabet) << " has probability " << to_string(w.left)
                    << " vs " << to_string(w.right) << "\n";
            } else if constexpr (std::is_same_v<T, FailurePairWitness>) {
                out << "witness: failure pair (" << render_word(w.word, alphabet) << ", "
                    << render_label_set(w.refusal, alphabet) << ") of one side only\n";
            } else if constexpr (std::is_same_v<T, MoveTree>) {
                out << "witness: Spoiler's winning moves\n";
                print_tree(out, w, alphabet, 1);
            } else {
                out << "witness: the " << (w.spoiler_side == Side::Left ? "left" : "right")
                    << " side is not simulated\n";
                print_tree(out, w.tree, alphabet, 1);
            }
        },
        witness);
}

void print_verdict(std::ostream& out, const Verdict& verdict, const std::vector<std::string>& alphabet) {
    switch (verdict.kind) {
    case Verdict::Kind::EquivalentUpTo:
        out << "equivalent up to depth " << verdict.depth << "\n";
        break;
    case Verdict::Kind::EquivalentLimit:
        out << "equivalent (limit)\n";
        break;
    case Verdict::Kind::Distinguished:
        out << "distinguished at depth " << verdict.depth << "\n";
        break;
    }
    if (verdict.infinite_mode_degenerate) {
        out << "note: the infinite game is degenerate for this semantics; every position is won by Duplicator\n";
    }
    if (verdict.witness) {
        print_witness(out, *verdict.witness, alphabet);
    }
}

void print_strategy(std::ostream& out, const std::vector<std::pair<DetState, DetState>>& pairs) {
    out << "Duplicator strategy (" << pairs.size() << " related continuation pairs):\n";
    for (const auto& [s, t] : pairs) {
        out << "  " << to_string(s) << " ~ " << to_string(t) << "\n";
    }
}

void print_graph(std::ostream& out, const DetGraph& g) {
    out << g.size() << " det states (" << to_string(g.semantics()) << (g.complete() ? "" : ", frontier left")
        << ")\n";
    for (DetId i = 0; i < g.size(); ++i) {
        const auto& node = g.node(i);
        out << "  [" << i << "] " << to_string(node.state);
        if (!node.profile) {
            out << "  (unexpanded)\n";
            continue;
        }
        for (const auto& e : node.profile->edges) {
            out << "  " << g.alphabet().at(e.label);
            if (g.semantics() == SemanticsId::ProbabilisticTrace) {
                out << "[" << to_string(e.weight) << "]";
            }
            out << "->" << e.target;
        }
        if (g.semantics() == SemanticsId::Failure) {
            out << "  refusals:";
            for (const auto& set : node.profile->refusals) {
                out << " " << render_label_set(set, g.alphabet());
            }
        }
        out << "\n";
    }
}

} // namespace gradeq::cli
