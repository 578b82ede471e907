#pragma once

#include "gradeq/engine.hpp"
#include "gradeq/game.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace gradeq::cli {

std::string render_word(const Word& word, const std::vector<std::string>& alphabet);
std::string render_label_set(const LabelSet& set, const std::vector<std::string>& alphabet);

void print_witness(std::ostream& out, const Witness& witness, const std::vector<std::string>& alphabet);
void print_verdict(std::ostream& out, const Verdict& verdict, const std::vector<std::string>& alphabet);
void print_strategy(std::ostream& out, const std::vector<std::pair<DetState, DetState>>& pairs);
void print_graph(std::ostream& out, const DetGraph& g);

} // namespace gradeq::cli
