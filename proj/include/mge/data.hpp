#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mge/rng.hpp"

namespace mge {

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Immutable classification dataset. Features are stored column-major so the
// batched evaluator can stream whole feature columns; labels are contiguous
// class indices 1..c in order of first appearance.
class Dataset {
public:
    Dataset(std::vector<std::vector<double>> columns, std::vector<int> labels, int class_count,
            std::vector<std::string> class_names, std::string name);

    int n() const { return static_cast<int>(labels_.size()); }
    int d() const { return static_cast<int>(columns_.size()); }
    int c() const { return class_count_; }
    const std::string& name() const { return name_; }

    std::span<const double> column(int feature) const { // 0-based
        return columns_[static_cast<std::size_t>(feature)];
    }
    std::vector<const double*> column_pointers() const;
    int label(int row) const { return labels_[static_cast<std::size_t>(row)]; }
    const std::vector<int>& labels() const { return labels_; }
    std::vector<double> row(int index) const;
    const std::vector<std::string>& class_names() const { return class_names_; }

    Dataset subset(const std::vector<int>& rows, std::string name) const;

private:
    std::vector<std::vector<double>> columns_;
    std::vector<int> labels_;
    int class_count_;
    std::vector<std::string> class_names_;
    std::string name_;
};

struct Split {
    Dataset train;
    Dataset test;
};

// label_column: 0-based column index, or -1 for the last column. Labels may
// be any strings/numbers; they map to 1..c by first appearance. Rejects
// non-numeric feature cells, missing values, empty files, and single-class
// label columns.
Dataset load_csv(const std::string& path, int label_column = -1, bool has_header = true);
Dataset parse_csv(const std::string& text, int label_column, bool has_header, std::string name);

// Min-max scaling to [0,1], fit on train only; test uses train's parameters
// and may fall outside [0,1]. Constant features map to 0.
Split normalize_minmax(const Split& split);

// Uniform shuffle, then partition. Errors when a source class is missing
// from the train side. stratify keeps per-class proportions.
Split make_split(const Dataset& data, double train_fraction, Rng& rng, bool stratify = false);

// Shuffle then k folds differing in size by at most one; every row appears
// in exactly one test fold.
std::vector<Split> kfold(const Dataset& data, int k, Rng& rng);

// Synthetic sets for desk-scale runs. Deterministic for a fixed Rng state.
Dataset make_blobs(int n, int d, int c, double separation, Rng& rng);
Dataset make_two_moons(int n, double noise, Rng& rng);

} // namespace mge
