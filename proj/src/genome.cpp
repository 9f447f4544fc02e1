#include "mge/genome.hpp"

#include <bit>
#include <stdexcept>

namespace mge {

std::size_t ModularGenotype::codon_count() const {
    std::size_t n = 0;
    for (const auto& gene : genes) n += gene.codons.size();
    return n;
}

Gene random_gene(Rng& rng, int gene_length) {
    Gene g;
    g.codons.resize(static_cast<std::size_t>(gene_length));
    for (auto& c : g.codons) c = rng.codon();
    return g;
}

ModularGenotype init_modular(Rng& rng, int sigma_lo, int sigma_hi, int gene_length) {
    if (sigma_lo < 1 || sigma_hi < sigma_lo) throw std::invalid_argument("init_modular: bad sigma range");
    if (gene_length < 1) throw std::invalid_argument("init_modular: gene length must be >= 1");
    ModularGenotype g;
    const int sigma = rng.uniform_int(sigma_lo, sigma_hi);
    g.genes.reserve(static_cast<std::size_t>(sigma));
    for (int i = 0; i < sigma; ++i) g.genes.push_back(random_gene(rng, gene_length));
    return g;
}

FlatGenotype init_flat(Rng& rng, int len_lo, int len_hi) {
    if (len_lo < 1 || len_hi < len_lo) throw std::invalid_argument("init_flat: bad length range");
    FlatGenotype g;
    g.codons.resize(static_cast<std::size_t>(rng.uniform_int(len_lo, len_hi)));
    for (auto& c : g.codons) c = rng.codon();
    return g;
}

namespace {

// Flip bit positions picked without replacement over the whole encoding.
std::vector<std::size_t> pick_bits(std::size_t total_bits, int k, Rng& rng) {
    std::vector<std::size_t> picked;
    picked.reserve(static_cast<std::size_t>(k));
    while (picked.size() < static_cast<std::size_t>(k)) {
        const std::size_t bit = rng.uniform_index(total_bits);
        bool duplicate = false;
        for (std::size_t p : picked) duplicate = duplicate || p == bit;
        if (!duplicate) picked.push_back(bit);
    }
    return picked;
}

} // namespace

ModularGenotype flip_hamming_bits(const ModularGenotype& g, int k, Rng& rng) {
    if (k < 1 || g.bit_count() < static_cast<std::size_t>(k))
        throw std::invalid_argument("flip_hamming_bits: k out of range");
    ModularGenotype out = g;
    for (std::size_t bit : pick_bits(g.bit_count(), k, rng)) {
        std::size_t codon = bit / 8;
        for (auto& gene : out.genes) {
            if (codon < gene.codons.size()) {
                gene.codons[codon] ^= static_cast<std::uint8_t>(1u << (bit % 8));
                break;
            }
            codon -= gene.codons.size();
        }
    }
    return out;
}

FlatGenotype flip_hamming_bits(const FlatGenotype& g, int k, Rng& rng) {
    if (k < 1 || g.bit_count() < static_cast<std::size_t>(k))
        throw std::invalid_argument("flip_hamming_bits: k out of range");
    FlatGenotype out = g;
    for (std::size_t bit : pick_bits(g.bit_count(), k, rng))
        out.codons[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
    return out;
}

namespace {

std::size_t popcount_diff(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("hamming_distance: shape mismatch");
    std::size_t n = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        n += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(a[i] ^ b[i])));
    return n;
}

} // namespace

std::size_t hamming_distance(const ModularGenotype& a, const ModularGenotype& b) {
    if (a.genes.size() != b.genes.size()) throw std::invalid_argument("hamming_distance: shape mismatch");
    std::size_t n = 0;
    for (std::size_t i = 0; i < a.genes.size(); ++i)
        n += popcount_diff(a.genes[i].codons, b.genes[i].codons);
    return n;
}

std::size_t hamming_distance(const FlatGenotype& a, const FlatGenotype& b) {
    return popcount_diff(a.codons, b.codons);
}

nlohmann::ordered_json to_json(const ModularGenotype& g) {
    nlohmann::ordered_json genes = nlohmann::ordered_json::array();
    for (const auto& gene : g.genes) genes.push_back(gene.codons);
    return genes;
}

ModularGenotype modular_from_json(const nlohmann::json& j) {
    ModularGenotype g;
    for (const auto& gene : j) {
        Gene gg;
        for (const auto& c : gene) gg.codons.push_back(c.get<std::uint8_t>());
        g.genes.push_back(std::move(gg));
    }
    if (g.genes.empty()) throw std::invalid_argument("modular genotype needs >= 1 gene");
    return g;
}

nlohmann::ordered_json to_json(const FlatGenotype& g) { return nlohmann::ordered_json(g.codons); }

FlatGenotype flat_from_json(const nlohmann::json& j) {
    FlatGenotype g;
    for (const auto& c : j) g.codons.push_back(c.get<std::uint8_t>());
    if (g.codons.empty()) throw std::invalid_argument("flat genotype needs >= 1 codon");
    return g;
}

} // namespace mge
