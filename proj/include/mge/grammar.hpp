#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "mge/variant.hpp"

namespace mge {

struct GrammarError : std::runtime_error {
    GrammarError(const std::string& msg, int line = 0, int column = 0)
        : std::runtime_error(msg), line(line), column(column) {}
    int line;
    int column;
};

struct Symbol {
    enum class Kind { Nonterminal, Terminal };
    Kind kind;
    std::string text;

    bool is_nonterminal() const { return kind == Kind::Nonterminal; }
    static Symbol nt(std::string name) { return {Kind::Nonterminal, std::move(name)}; }
    static Symbol term(std::string text) { return {Kind::Terminal, std::move(text)}; }
    bool operator==(const Symbol&) const = default;
};

using Production = std::vector<Symbol>;

// A context-free grammar in BNF: nonterminals, terminals, ordered production
// alternatives per nonterminal, and a start symbol. Alternative order is
// load-bearing: derivation selects alternatives by codon mod count.
// Immutable once validated; share freely across threads.
class Grammar {
public:
    void add_rule(const std::string& nonterminal, std::vector<Production> alternatives);
    void set_start(std::string nonterminal);

    const std::string& start() const { return start_; }
    bool has_nonterminal(const std::string& name) const { return rules_.count(name) != 0; }
    const std::vector<Production>& alternatives(const std::string& nonterminal) const;
    std::size_t alternative_count(const std::string& nonterminal) const;

    // Nonterminals in definition order (drives rendering and round-trips).
    const std::vector<std::string>& nonterminal_order() const { return order_; }
    std::unordered_set<std::string> terminal_set() const;

    // Throws GrammarError unless: start is defined, every referenced
    // nonterminal has a rule, and every rule has at least one alternative.
    void validate() const;

private:
    std::vector<std::string> order_;
    std::unordered_map<std::string, std::vector<Production>> rules_;
    std::string start_;
};

// BNF text format: one rule per logical line (backslash continuation),
// "<name> ::= alt | alt | ...". Unquoted text is split on whitespace into
// terminal tokens; single-quoted text is one terminal kept verbatim (the only
// way to put spaces inside a terminal). '#' starts a comment line. The first
// rule's left-hand side is the start symbol.
Grammar parse_bnf(const std::string& text);
Grammar parse_bnf_file(const std::string& path);
std::string render_bnf(const Grammar& g);

// Scratch object used while mapping one genotype: the base grammar plus
// terminal alternatives appended to some rules (neuron references h1, h2, ...).
// Appended alternatives index after the base ones. Single-threaded.
class GrammarOverlay {
public:
    explicit GrammarOverlay(const Grammar& base) : base_(&base) {}

    const Grammar& base() const { return *base_; }
    std::size_t alternative_count(const std::string& nonterminal) const;

    // One of the two pointers is set: a base production, or an appended
    // single-terminal alternative.
    struct AltRef {
        const Production* production = nullptr;
        const std::string* appended_terminal = nullptr;
    };
    AltRef alternative(const std::string& nonterminal, std::size_t index) const;

    void append_terminal(const std::string& nonterminal, const std::string& terminal);
    void clear() { appended_.clear(); }
    bool empty() const { return appended_.empty(); }

private:
    const Grammar* base_;
    std::unordered_map<std::string, std::vector<std::string>> appended_;
};

// --- neuron / network grammar construction ---------------------------------

enum class WeightForm {
    SignedFraction, // <Sign>0.<Digitlist>: any precision, magnitude < 1
    FixedPoint2,    // <Digit>.<Digit><Digit>: the 3-digit "#.##" form
};

struct NeuronGrammarOptions {
    int features = 2;               // d: terminals x1..xd
    int outputs = 1;                // output neuron count (1 for binary tasks)
    bool single_output_conn = true; // modular variants; false uses <OutputConns>
    WeightForm weight_form = WeightForm::SignedFraction;
    int fixed_output = 0;           // >0: <OutputNeuron> ::= output<n> only (alpha groups)
};

// Grammar deriving one hidden neuron sentence, e.g.
//   (output1:+0.52)*sig(+0.9*x1 + -0.3*h1 + +0.1*1)
Grammar build_neuron_grammar(const NeuronGrammarOptions& opts);

// Convenience matching the evolution configs: class_count <= 2 collapses to a
// single output neuron, modularity follows the variant.
Grammar build_neuron_grammar(int features, int class_count, Variant variant);

// Whole-network grammar for the GE baseline: "; "-separated list of
// single-output-connection neurons over the same sub-grammar.
Grammar build_network_grammar(const NeuronGrammarOptions& opts);

int output_neuron_count(int class_count);

} // namespace mge
