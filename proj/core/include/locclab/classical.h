// Copyright 2026 The locclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LOCCLAB_CLASSICAL_H
#define LOCCLAB_CLASSICAL_H

#include <cstdint>
#include <string>
#include <vector>

namespace locclab::classical {

/// Largest product space enumerated exhaustively (2^16 subsets).
inline constexpr size_t kMaxExhaustivePoints = 16;

/// Finite set of labeled pure states.
class FinitePhaseSpace {
   public:
    explicit FinitePhaseSpace(std::vector<std::string> points);
    /// Points labeled "0".."n-1".
    static FinitePhaseSpace range(size_t n);

    size_t size() const {
        return points_.size();
    }
    const std::vector<std::string> &points() const {
        return points_;
    }
    size_t index_of(const std::string &label) const;

   private:
    std::vector<std::string> points_;
};

struct Point {
    size_t left;
    size_t right;

    bool operator==(const Point &) const = default;
};

/// Cartesian product; point (x1, x2) has flat index x1 * |right| + x2.
class ProductSpace {
   public:
    ProductSpace(FinitePhaseSpace left, FinitePhaseSpace right);

    const FinitePhaseSpace &left() const {
        return left_;
    }
    const FinitePhaseSpace &right() const {
        return right_;
    }
    size_t size() const {
        return left_.size() * right_.size();
    }
    size_t index(Point p) const;
    Point point(size_t index) const;
    std::string label(Point p) const;

   private:
    FinitePhaseSpace left_;
    FinitePhaseSpace right_;
};

/// A global property given extensionally by its truth set.
class GlobalProperty {
   public:
    GlobalProperty(ProductSpace space, std::vector<bool> truth_set, std::string name = {});

    template <typename Pred>
    static GlobalProperty from_predicate(const ProductSpace &space, Pred pred, std::string name = {}) {
        std::vector<bool> truth(space.size());
        for (size_t i = 0; i < space.size(); ++i) {
            truth[i] = pred(space.point(i));
        }
        return GlobalProperty(space, std::move(truth), std::move(name));
    }
    /// Subset encoded as a bitmask over flat indices.
    static GlobalProperty from_mask(const ProductSpace &space, uint64_t mask);

    const ProductSpace &space() const {
        return space_;
    }
    const std::vector<bool> &truth_set() const {
        return truth_;
    }
    const std::string &name() const {
        return name_;
    }
    bool contains(Point p) const {
        return truth_[space_.index(p)];
    }

   private:
    ProductSpace space_;
    std::vector<bool> truth_;
    std::string name_;
};

/// left_set x right_set, both nonempty, as sorted index lists.
struct Rectangle {
    std::vector<size_t> left_set;
    std::vector<size_t> right_set;

    bool operator==(const Rectangle &) const = default;
};

/// Row-wise decomposition: each nonempty row {x1} x {x2 | (x1,x2) true}, with
/// rows sharing the same column set merged into one rectangle (ordered by
/// first row). At most |left| rectangles; the full space gives one.
std::vector<Rectangle> decompose_into_rectangles(const GlobalProperty &property);

enum class InferenceStep { kReadLeft, kReadRight, kSendLeft, kSendRight, kEvaluate };

struct InferenceTranscript {
    std::string left_read;
    std::string right_read;
    std::vector<InferenceStep> steps;
    bool evaluation;
};

struct InferenceResult {
    bool truth;
    InferenceTranscript transcript;
};

/// Each agent reads only its own component, both values are communicated, and
/// membership is evaluated on the communicated pair.
InferenceResult infer_locally(const GlobalProperty &property, Point actual);

struct LocalityReport {
    uint64_t properties_checked = 0;
    uint64_t points_checked = 0;
    bool all_inferable = true;
    bool decompositions_exact = true;
};

/// Exhaustive check over every subset of `space`. Throws kTooLarge above
/// kMaxExhaustivePoints points.
LocalityReport verify_all_properties_local(const ProductSpace &space, unsigned threads = 0);

/// True if `rects` are pairwise disjoint and their union is exactly the truth set.
bool is_exact_decomposition(const GlobalProperty &property, const std::vector<Rectangle> &rects);

}  // namespace locclab::classical

#endif  // LOCCLAB_CLASSICAL_H
