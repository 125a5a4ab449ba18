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

#include "locclab/classical.h"

#include <algorithm>
#include <set>

#include "locclab/error.h"
#include "locclab/parallel.h"

namespace locclab::classical {

FinitePhaseSpace::FinitePhaseSpace(std::vector<std::string> points) : points_(std::move(points)) {
    if (points_.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "phase space must be nonempty");
    }
    std::set<std::string> seen(points_.begin(), points_.end());
    if (seen.size() != points_.size()) {
        throw Error(ErrorCode::kDuplicate, "phase space labels must be distinct");
    }
}

FinitePhaseSpace FinitePhaseSpace::range(size_t n) {
    std::vector<std::string> pts;
    for (size_t i = 0; i < n; ++i) {
        pts.push_back(std::to_string(i));
    }
    return FinitePhaseSpace(std::move(pts));
}

size_t FinitePhaseSpace::index_of(const std::string &label) const {
    auto it = std::find(points_.begin(), points_.end(), label);
    if (it == points_.end()) {
        throw Error(ErrorCode::kUnknownLabel, "no point '" + label + "' in phase space");
    }
    return static_cast<size_t>(it - points_.begin());
}

ProductSpace::ProductSpace(FinitePhaseSpace left, FinitePhaseSpace right)
    : left_(std::move(left)), right_(std::move(right)) {
}

size_t ProductSpace::index(Point p) const {
    if (p.left >= left_.size() || p.right >= right_.size()) {
        throw Error(ErrorCode::kInvalidArgument, "point outside the product space");
    }
    return p.left * right_.size() + p.right;
}

Point ProductSpace::point(size_t index) const {
    if (index >= size()) {
        throw Error(ErrorCode::kInvalidArgument, "point index outside the product space");
    }
    return {index / right_.size(), index % right_.size()};
}

std::string ProductSpace::label(Point p) const {
    index(p);
    return "(" + left_.points()[p.left] + "," + right_.points()[p.right] + ")";
}

GlobalProperty::GlobalProperty(ProductSpace space, std::vector<bool> truth_set, std::string name)
    : space_(std::move(space)), truth_(std::move(truth_set)), name_(std::move(name)) {
    if (truth_.size() != space_.size()) {
        throw Error(ErrorCode::kDimensionMismatch, "truth set does not match the product space");
    }
}

GlobalProperty GlobalProperty::from_mask(const ProductSpace &space, uint64_t mask) {
    if (space.size() > 64) {
        throw Error(ErrorCode::kTooLarge, "bitmask properties need at most 64 points");
    }
    std::vector<bool> truth(space.size());
    for (size_t i = 0; i < space.size(); ++i) {
        truth[i] = (mask >> i) & 1u;
    }
    return GlobalProperty(space, std::move(truth), "mask:" + std::to_string(mask));
}

std::vector<Rectangle> decompose_into_rectangles(const GlobalProperty &property) {
    const auto &space = property.space();
    std::vector<Rectangle> out;
    for (size_t x1 = 0; x1 < space.left().size(); ++x1) {
        std::vector<size_t> cols;
        for (size_t x2 = 0; x2 < space.right().size(); ++x2) {
            if (property.contains({x1, x2})) {
                cols.push_back(x2);
            }
        }
        if (cols.empty()) {
            continue;
        }
        auto same = std::find_if(out.begin(), out.end(), [&](const Rectangle &r) { return r.right_set == cols; });
        if (same != out.end()) {
            same->left_set.push_back(x1);
        } else {
            out.push_back({{x1}, std::move(cols)});
        }
    }
    return out;
}

bool is_exact_decomposition(const GlobalProperty &property, const std::vector<Rectangle> &rects) {
    const auto &space = property.space();
    std::vector<int> cover(space.size(), 0);
    for (const auto &r : rects) {
        if (r.left_set.empty() || r.right_set.empty()) {
            return false;
        }
        for (size_t x1 : r.left_set) {
            for (size_t x2 : r.right_set) {
                if (x1 >= space.left().size() || x2 >= space.right().size()) {
                    return false;
                }
                ++cover[space.index({x1, x2})];
            }
        }
    }
    for (size_t i = 0; i < space.size(); ++i) {
        if (cover[i] != (property.truth_set()[i] ? 1 : 0)) {
            return false;
        }
    }
    return true;
}

namespace {

/// An agent holding one component of the actual state and nothing else.
class LocalAgent {
   public:
    LocalAgent(const FinitePhaseSpace &space, size_t actual) : space_(space), actual_(actual) {
    }
    size_t read() const {
        return actual_;
    }
    const std::string &label(size_t x) const {
        return space_.points()[x];
    }

   private:
    const FinitePhaseSpace &space_;
    size_t actual_;
};

}  // namespace

InferenceResult infer_locally(const GlobalProperty &property, Point actual) {
    const auto &space = property.space();
    if (actual.left >= space.left().size() || actual.right >= space.right().size()) {
        throw Error(ErrorCode::kInvalidArgument, "actual point is outside the product space");
    }
    LocalAgent left(space.left(), actual.left);
    LocalAgent right(space.right(), actual.right);

    InferenceTranscript t;
    const size_t x1 = left.read();
    t.steps.push_back(InferenceStep::kReadLeft);
    const size_t x2 = right.read();
    t.steps.push_back(InferenceStep::kReadRight);
    t.left_read = left.label(x1);
    t.steps.push_back(InferenceStep::kSendLeft);
    t.right_read = right.label(x2);
    t.steps.push_back(InferenceStep::kSendRight);
    // Only the communicated values enter the evaluation.
    t.evaluation = property.contains({space.left().index_of(t.left_read), space.right().index_of(t.right_read)});
    t.steps.push_back(InferenceStep::kEvaluate);
    return {t.evaluation, std::move(t)};
}

LocalityReport verify_all_properties_local(const ProductSpace &space, unsigned threads) {
    const size_t n = space.size();
    if (n > kMaxExhaustivePoints) {
        throw Error(ErrorCode::kTooLarge, "exhaustive verification supports at most " +
                                              std::to_string(kMaxExhaustivePoints) + " points, got " +
                                              std::to_string(n));
    }
    const uint64_t subsets = uint64_t{1} << n;
    const size_t chunks = std::min<uint64_t>(subsets, 64);
    std::vector<LocalityReport> partial(chunks);
    parallel_for(chunks, threads == 0 ? configured_threads() : threads, [&](size_t c) {
        LocalityReport &r = partial[c];
        for (uint64_t mask = c; mask < subsets; mask += chunks) {
            GlobalProperty prop = GlobalProperty::from_mask(space, mask);
            ++r.properties_checked;
            if (!is_exact_decomposition(prop, decompose_into_rectangles(prop))) {
                r.decompositions_exact = false;
            }
            for (size_t i = 0; i < n; ++i) {
                Point p = space.point(i);
                ++r.points_checked;
                if (infer_locally(prop, p).truth != ((mask >> i) & 1u)) {
                    r.all_inferable = false;
                }
            }
        }
    });
    LocalityReport total;
    for (const auto &r : partial) {
        total.properties_checked += r.properties_checked;
        total.points_checked += r.points_checked;
        total.all_inferable = total.all_inferable && r.all_inferable;
        total.decompositions_exact = total.decompositions_exact && r.decompositions_exact;
    }
    return total;
}

}  // namespace locclab::classical
