#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "mge/tree.hpp"
#include "mge/variant.hpp"

#include "json.hpp"

namespace mge {

// A weight as derived from the grammar: numeric value plus the literal digit
// string. The literal is what dumps and evaluation trees show; two phenotypes
// with different literals are different even when the values coincide
// ("+0.5" vs "+0.50").
struct WeightLiteral {
    double value = 0.0;
    std::string literal;

    bool operator==(const WeightLiteral&) const = default;
};

struct NeuronSource {
    enum class Kind { Feature, Hidden };
    Kind kind = Kind::Feature;
    int index = 1; // 1-based: x<i> or h<i>

    bool operator==(const NeuronSource&) const = default;
    std::string name() const { return (kind == Kind::Feature ? "x" : "h") + std::to_string(index); }
};

struct InputConn {
    NeuronSource source;
    WeightLiteral weight;
    bool operator==(const InputConn&) const = default;
};

struct OutputConn {
    int output = 1; // 1-based output neuron index
    WeightLiteral weight;
    bool operator==(const OutputConn&) const = default;
};

// One hidden neuron: weighted inputs (features or earlier neurons), a bias,
// and one or more weighted connections to output neurons.
struct Neuron {
    std::vector<OutputConn> output_conns;
    std::vector<InputConn> input_conns;
    WeightLiteral bias;

    bool operator==(const Neuron&) const = default;
};

// Renders the paper-format sentence, e.g.
//   (output1:+0.5)*sig(+0.9*x1 + -0.3*h1 + +0.1*1)
std::string neuron_sentence(const Neuron& n);

struct NetworkMetrics {
    int layers = 0;        // longest hidden-neuron dependency chain
    int neurons = 0;       // hidden neurons
    int features_used = 0; // distinct feature indices referenced
    int connections = 0;   // input + bias + output connections (a1)
    long long flops = 0;   // 2*a1 + 4*a2, a2 counting hidden + output neurons
};

enum class OutputKind { SingleSigmoid, Softmax };

// Assembled phenotype. Hidden neurons evaluate in mapping order; each output
// neuron is a sigmoidal accumulator of the hidden neurons connected to it.
// Immutable after construction; forward() is reentrant.
class Network {
public:
    Network(std::vector<Neuron> hidden, int output_count, int feature_count, Variant variant);

    int feature_count() const { return d_; }
    int output_count() const { return c_out_; }
    int class_count() const { return c_out_ == 1 ? 2 : c_out_; }
    OutputKind output_kind() const { return c_out_ == 1 ? OutputKind::SingleSigmoid : OutputKind::Softmax; }
    Variant variant() const { return variant_; }
    const std::vector<Neuron>& hidden() const { return hidden_; }

    // One term of an output neuron's sum: hidden()[hidden].output_conns[conn].
    struct OutputTerm {
        int hidden;
        int conn;
    };
    // Contributions per output neuron, in mapping order.
    const std::vector<std::vector<OutputTerm>>& output_terms() const { return outputs_; }

    // Probability vector of length class_count(). Binary networks return
    // [s1, 1 - s1]; multiclass networks softmax the sigmoidal output values.
    std::vector<double> forward(std::span<const double> x) const;

    // argmax of forward(); ties break toward the lowest class index.
    int predict(std::span<const double> x) const;

    // Batched evaluation: feature_cols[f] points at n contiguous values of
    // feature f+1. Writes class probabilities row-major (class_count() x n).
    // Runs on the runtime-selected kernel backend.
    void forward_batch(const std::vector<const double*>& feature_cols, std::size_t n,
                       double* probs) const;

    NetworkMetrics metrics() const;
    EvalTree to_eval_tree() const;

    // Per-neuron sentences followed by the assembled output strings.
    std::string to_string() const;
    std::string output_string(int output_index) const; // 1-based

    nlohmann::ordered_json to_json() const;
    static Network from_json(const nlohmann::json& j);

private:
    std::vector<Neuron> hidden_;
    std::vector<std::vector<OutputTerm>> outputs_;
    int c_out_;
    int d_;
    Variant variant_;

    void validate() const;
    std::vector<double> hidden_activations(std::span<const double> x) const;
};

} // namespace mge
