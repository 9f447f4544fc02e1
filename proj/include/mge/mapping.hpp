#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mge/genome.hpp"
#include "mge/grammar.hpp"
#include "mge/network.hpp"
#include "mge/variant.hpp"

namespace mge {

// Result of one GE derivation. INVALID is a value, not an error: the codons
// ran out (after max_wraps re-reads) with nonterminals left.
struct DeriveResult {
    bool valid = false;
    std::string sentence;          // concatenated terminal tokens
    std::size_t codons_used = 0;   // reads including wrapped ones
    int wraps_used = 0;
};

// Leftmost derivation; a codon is consumed only at rules with more than one
// alternative, selected as codon mod alternative-count.
DeriveResult ge_derive(std::span<const std::uint8_t> codons, const Grammar& grammar, int max_wraps);
DeriveResult ge_derive(std::span<const std::uint8_t> codons, const GrammarOverlay& grammar, int max_wraps);

// Sentence parsers for the grammar's string formats. Accept both the
// "(output5:2)(output3:1)*sig(...)" form and the simplified "1:2*sig(...)"
// prefix, with optional commas between output connections.
Neuron parse_neuron_sentence(const std::string& sentence);
std::vector<Neuron> parse_network_sentence(const std::string& sentence); // "; "-separated

// Maps one gene with no wrapping; nullopt when derivation fails.
std::optional<Neuron> map_neuron(const Gene& gene, const GrammarOverlay& grammar);

// Either a mapped network or the invalid-individual sentinel (no gene mapped).
struct MapOutcome {
    std::shared_ptr<const Network> network;

    bool valid() const { return network != nullptr; }
    static MapOutcome invalid() { return {}; }
};

// Holds the grammars for one (features, classes, variant) configuration and
// runs the full genotype-to-phenotype mapping. The mapper itself is immutable
// and shareable; each map() call owns a private overlay.
class Mapper {
public:
    Mapper(int features, int class_count, Variant variant,
           WeightForm weight_form = WeightForm::SignedFraction);

    Variant variant() const { return variant_; }
    int feature_count() const { return d_; }
    int class_count() const { return classes_; }
    int output_count() const { return c_out_; }
    int max_wraps() const { return max_wraps_; }
    void set_max_wraps(int wraps) { max_wraps_ = wraps; } // GE baseline only; gene mapping never wraps

    const Grammar& neuron_grammar() const { return neuron_grammar_; }
    const Grammar& network_grammar() const; // GE baseline grammar

    MapOutcome map(const ModularGenotype& genotype) const;
    MapOutcome map(const FlatGenotype& genotype) const;

private:
    int d_;
    int classes_;
    int c_out_;
    Variant variant_;
    int max_wraps_ = 0;
    Grammar neuron_grammar_;
    std::vector<Grammar> group_grammars_; // alpha: one per output, OutputNeuron fixed
    Grammar network_grammar_;

    std::vector<Neuron> map_genes(std::span<const Gene> genes, const Grammar& grammar,
                                  int& neuron_counter) const;
};

// Spec-shaped convenience: builds a Mapper for (grammar dims, variant, c) and
// maps. Prefer a long-lived Mapper in loops.
MapOutcome map_individual(const ModularGenotype& genotype, int features, int class_count,
                          Variant variant);

// Assembly step shared by both mappers: joins the mapped neurons into a
// network with c_out sigmoidal accumulator outputs.
Network assemble(std::vector<Neuron> neurons, int output_count, int feature_count, Variant variant);

} // namespace mge
