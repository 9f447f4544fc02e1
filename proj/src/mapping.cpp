#include "mge/mapping.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <stdexcept>
#include <type_traits>

namespace mge {

namespace {

// Guard against grammars whose single-alternative rules expand without
// consuming codons (e.g. "<a> ::= <a>"): abort as INVALID once the expansion
// count leaves any sane derivation behind.
std::size_t step_limit(std::size_t codon_count) { return 4096 + 32 * codon_count; }

template <typename GrammarLike>
DeriveResult derive_impl(std::span<const std::uint8_t> codons, const GrammarLike& grammar,
                         const std::string& start, int max_wraps) {
    DeriveResult result;
    if (codons.empty()) return result;

    std::vector<Symbol> stack; // derivation frontier, leftmost on top
    stack.push_back(Symbol::nt(start));

    std::size_t next = 0; // next codon to read
    int wraps = 0;
    std::size_t steps = 0;
    const std::size_t max_steps = step_limit(codons.size());
    std::string sentence;

    while (!stack.empty()) {
        if (++steps > max_steps) return result;
        Symbol sym = std::move(stack.back());
        stack.pop_back();
        if (!sym.is_nonterminal()) {
            sentence += sym.text;
            continue;
        }
        const std::size_t count = grammar.alternative_count(sym.text);
        std::size_t choice = 0;
        if (count > 1) {
            if (next == codons.size()) {
                if (wraps == max_wraps) return result; // nonterminals remain
                ++wraps;
                next = 0;
            }
            choice = codons[next] % count;
            ++next;
            ++result.codons_used;
        }
        if constexpr (std::is_same_v<GrammarLike, GrammarOverlay>) {
            const auto alt = grammar.alternative(sym.text, choice);
            if (alt.appended_terminal != nullptr) {
                sentence += *alt.appended_terminal;
            } else {
                const Production& prod = *alt.production;
                for (auto it = prod.rbegin(); it != prod.rend(); ++it) stack.push_back(*it);
            }
        } else {
            const Production& prod = grammar.alternatives(sym.text)[choice];
            for (auto it = prod.rbegin(); it != prod.rend(); ++it) stack.push_back(*it);
        }
    }

    result.valid = true;
    result.sentence = std::move(sentence);
    result.wraps_used = wraps;
    return result;
}

} // namespace

DeriveResult ge_derive(std::span<const std::uint8_t> codons, const Grammar& grammar, int max_wraps) {
    return derive_impl(codons, grammar, grammar.start(), max_wraps);
}

DeriveResult ge_derive(std::span<const std::uint8_t> codons, const GrammarOverlay& grammar,
                       int max_wraps) {
    return derive_impl(codons, grammar, grammar.base().start(), max_wraps);
}

// --- sentence parsing ---------------------------------------------------------

namespace {

struct SentenceCursor {
    const std::string& text;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("bad neuron sentence at offset " + std::to_string(pos) + ": " +
                                    what + " in \"" + text + "\"");
    }
    bool eat(const std::string& token) {
        if (text.compare(pos, token.size(), token) == 0) {
            pos += token.size();
            return true;
        }
        return false;
    }
    void expect(const std::string& token) {
        if (!eat(token)) fail("expected '" + token + "'");
    }
    bool done() const { return pos == text.size(); }

    int read_index() {
        std::size_t end = pos;
        while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
        if (end == pos) fail("expected index digits");
        const int value = std::atoi(text.substr(pos, end - pos).c_str());
        pos = end;
        return value;
    }

    WeightLiteral read_number() {
        const std::size_t begin = pos;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) ++pos;
        bool digits = false;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            ++pos;
            digits = true;
        }
        if (pos < text.size() && text[pos] == '.') {
            ++pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                ++pos;
                digits = true;
            }
        }
        if (!digits) fail("expected number");
        WeightLiteral w;
        w.literal = text.substr(begin, pos - begin);
        w.value = std::strtod(w.literal.c_str(), nullptr);
        return w;
    }
};

// One term of the sum: <number>*<atom> where atom is x<i>, h<i>, or the bias
// marker "1".
bool parse_term(SentenceCursor& cur, Neuron& neuron, bool& saw_bias) {
    const WeightLiteral w = cur.read_number();
    cur.expect("*");
    if (cur.eat("x")) {
        neuron.input_conns.push_back({{NeuronSource::Kind::Feature, cur.read_index()}, w});
        return true;
    }
    if (cur.eat("h")) {
        neuron.input_conns.push_back({{NeuronSource::Kind::Hidden, cur.read_index()}, w});
        return true;
    }
    if (cur.eat("1")) {
        neuron.bias = w;
        saw_bias = true;
        return true;
    }
    cur.fail("expected x<i>, h<i>, or bias '1'");
}

Neuron parse_neuron_at(SentenceCursor& cur) {
    Neuron neuron;
    if (cur.done()) cur.fail("empty sentence");
    if (cur.text[cur.pos] == '(') {
        // full form: (output<k>:<w>) repeated, optionally comma-separated
        while (cur.eat("(")) {
            cur.expect("output");
            const int out = cur.read_index();
            cur.expect(":");
            const WeightLiteral w = cur.read_number();
            cur.expect(")");
            neuron.output_conns.push_back({out, w});
            cur.eat(",");
        }
    } else {
        // simplified form: <k>:<w>
        const int out = cur.read_index();
        cur.expect(":");
        neuron.output_conns.push_back({out, cur.read_number()});
    }
    if (neuron.output_conns.empty()) cur.fail("expected output connection");
    cur.expect("*sig(");
    bool saw_bias = false;
    parse_term(cur, neuron, saw_bias);
    while (cur.eat(" + ")) parse_term(cur, neuron, saw_bias);
    cur.expect(")");
    if (!saw_bias) cur.fail("missing bias term");
    if (neuron.input_conns.empty()) cur.fail("neuron has no input connections");
    return neuron;
}

} // namespace

Neuron parse_neuron_sentence(const std::string& sentence) {
    SentenceCursor cur{sentence};
    Neuron n = parse_neuron_at(cur);
    if (!cur.done()) cur.fail("trailing text");
    return n;
}

std::vector<Neuron> parse_network_sentence(const std::string& sentence) {
    SentenceCursor cur{sentence};
    std::vector<Neuron> neurons;
    neurons.push_back(parse_neuron_at(cur));
    while (cur.eat("; ")) neurons.push_back(parse_neuron_at(cur));
    if (!cur.done()) cur.fail("trailing text");
    return neurons;
}

std::optional<Neuron> map_neuron(const Gene& gene, const GrammarOverlay& grammar) {
    const DeriveResult derived = ge_derive(gene.codons, grammar, /*max_wraps=*/0);
    if (!derived.valid) return std::nullopt;
    return parse_neuron_sentence(derived.sentence);
}

// --- individual mapping ------------------------------------------------------

Mapper::Mapper(int features, int class_count, Variant variant, WeightForm weight_form)
    : d_(features),
      classes_(class_count),
      c_out_(output_neuron_count(class_count)),
      variant_(variant) {
    NeuronGrammarOptions opts;
    opts.features = d_;
    opts.outputs = c_out_;
    opts.single_output_conn = variant == Variant::GE_BASELINE || is_modular(variant);
    opts.weight_form = weight_form;
    neuron_grammar_ = build_neuron_grammar(opts);
    if (variant == Variant::ALPHA) {
        for (int g = 1; g <= c_out_; ++g) {
            NeuronGrammarOptions group = opts;
            group.fixed_output = g;
            group_grammars_.push_back(build_neuron_grammar(group));
        }
    }
    if (variant == Variant::GE_BASELINE) network_grammar_ = build_network_grammar(opts);
}

const Grammar& Mapper::network_grammar() const {
    if (variant_ != Variant::GE_BASELINE)
        throw std::logic_error("network grammar only exists for the GE baseline");
    return network_grammar_;
}

std::vector<Neuron> Mapper::map_genes(std::span<const Gene> genes, const Grammar& grammar,
                                      int& neuron_counter) const {
    GrammarOverlay overlay(grammar);
    std::vector<Neuron> neurons;
    for (const Gene& gene : genes) {
        const auto neuron = map_neuron(gene, overlay);
        if (!neuron) continue; // failed gene: skipped, no index assigned
        neurons.push_back(*neuron);
        ++neuron_counter;
        if (is_multilayer(variant_))
            overlay.append_terminal("xnList", "h" + std::to_string(neuron_counter));
    }
    return neurons;
}

MapOutcome Mapper::map(const ModularGenotype& genotype) const {
    if (variant_ == Variant::GE_BASELINE)
        throw std::logic_error("GE baseline maps flat genotypes only");
    if (genotype.genes.empty()) return MapOutcome::invalid();

    std::vector<Neuron> neurons;
    int counter = 0;
    if (variant_ == Variant::ALPHA) {
        // Group genes by peeking at the first codon; each group maps against
        // its fixed-output grammar with a fresh overlay.
        std::vector<std::vector<Gene>> groups(static_cast<std::size_t>(c_out_));
        for (const Gene& gene : genotype.genes) {
            const int g = gene.codons.empty() ? 0 : gene.codons.front() % c_out_;
            groups[static_cast<std::size_t>(g)].push_back(gene);
        }
        for (int g = 0; g < c_out_; ++g) {
            auto mapped = map_genes(groups[static_cast<std::size_t>(g)],
                                    group_grammars_[static_cast<std::size_t>(g)], counter);
            std::move(mapped.begin(), mapped.end(), std::back_inserter(neurons));
        }
    } else {
        neurons = map_genes(genotype.genes, neuron_grammar_, counter);
    }
    if (neurons.empty()) return MapOutcome::invalid();
    return {std::make_shared<Network>(assemble(std::move(neurons), c_out_, d_, variant_))};
}

MapOutcome Mapper::map(const FlatGenotype& genotype) const {
    if (variant_ != Variant::GE_BASELINE)
        throw std::logic_error("flat genotypes map under the GE baseline only");
    const DeriveResult derived = ge_derive(genotype.codons, network_grammar_, max_wraps_);
    if (!derived.valid) return MapOutcome::invalid();
    return {std::make_shared<Network>(
        assemble(parse_network_sentence(derived.sentence), c_out_, d_, variant_))};
}

MapOutcome map_individual(const ModularGenotype& genotype, int features, int class_count,
                          Variant variant) {
    return Mapper(features, class_count, variant).map(genotype);
}

Network assemble(std::vector<Neuron> neurons, int output_count, int feature_count, Variant variant) {
    if (neurons.empty()) throw std::invalid_argument("assemble: no neurons");
    return Network(std::move(neurons), output_count, feature_count, variant);
}

} // namespace mge
