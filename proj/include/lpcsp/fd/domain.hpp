// Copyright 2026 The lpcsp Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LPCSP_FD_DOMAIN_HPP
#define LPCSP_FD_DOMAIN_HPP

#include <lpcsp/common.hpp>

#include <algorithm>
#include <cassert>
#include <initializer_list>
#include <vector>

namespace lpcsp::fd {

/// Finite ordered set of integers, stored as sorted disjoint closed
/// intervals so wide ranges (capacities, reserves) stay cheap to copy.
class Domain {
public:
    struct Range {
        Value lo;
        Value hi;
        friend bool operator==(const Range&, const Range&) = default;
    };

    Domain() = default;

    static Domain interval(Value lo, Value hi) {
        Domain d;
        if (lo <= hi) d.ranges_.push_back({lo, hi});
        return d;
    }

    static Domain of(std::vector<Value> values) {
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        Domain d;
        for (Value v : values) {
            if (!d.ranges_.empty() && d.ranges_.back().hi != INT64_MAX && d.ranges_.back().hi + 1 == v)
                d.ranges_.back().hi = v;
            else
                d.ranges_.push_back({v, v});
        }
        return d;
    }

    static Domain of(std::initializer_list<Value> values) { return of(std::vector<Value>(values)); }

    bool empty() const noexcept { return ranges_.empty(); }

    std::uint64_t size() const noexcept {
        std::uint64_t n = 0;
        for (const auto& r : ranges_) n += static_cast<std::uint64_t>(r.hi - r.lo) + 1;
        return n;
    }

    bool fixed() const noexcept { return ranges_.size() == 1 && ranges_[0].lo == ranges_[0].hi; }

    Value min() const {
        assert(!empty());
        return ranges_.front().lo;
    }
    Value max() const {
        assert(!empty());
        return ranges_.back().hi;
    }
    Value value() const {
        assert(fixed());
        return ranges_[0].lo;
    }

    bool contains(Value v) const noexcept {
        auto it = std::upper_bound(ranges_.begin(), ranges_.end(), v,
                                   [](Value x, const Range& r) { return x < r.lo; });
        if (it == ranges_.begin()) return false;
        --it;
        return v <= it->hi;
    }

    /// Smallest member >= v, if any.
    std::optional<Value> next_at_least(Value v) const noexcept {
        for (const auto& r : ranges_) {
            if (r.hi < v) continue;
            return std::max(r.lo, v);
        }
        return std::nullopt;
    }

    /// Largest member <= v, if any.
    std::optional<Value> prev_at_most(Value v) const noexcept {
        for (auto it = ranges_.rbegin(); it != ranges_.rend(); ++it) {
            if (it->lo > v) continue;
            return std::min(it->hi, v);
        }
        return std::nullopt;
    }

    bool remove(Value v) {
        auto it = std::upper_bound(ranges_.begin(), ranges_.end(), v,
                                   [](Value x, const Range& r) { return x < r.lo; });
        if (it == ranges_.begin()) return false;
        --it;
        if (v > it->hi) return false;
        if (it->lo == it->hi) {
            ranges_.erase(it);
        } else if (v == it->lo) {
            ++it->lo;
        } else if (v == it->hi) {
            --it->hi;
        } else {
            Range upper{v + 1, it->hi};
            it->hi = v - 1;
            ranges_.insert(it + 1, upper);
        }
        return true;
    }

    bool restrict_min(Value lo) {
        if (empty() || min() >= lo) return false;
        auto it = ranges_.begin();
        while (it != ranges_.end() && it->hi < lo) ++it;
        ranges_.erase(ranges_.begin(), it);
        if (!ranges_.empty() && ranges_.front().lo < lo) ranges_.front().lo = lo;
        return true;
    }

    bool restrict_max(Value hi) {
        if (empty() || max() <= hi) return false;
        while (!ranges_.empty() && ranges_.back().lo > hi) ranges_.pop_back();
        if (!ranges_.empty() && ranges_.back().hi > hi) ranges_.back().hi = hi;
        return true;
    }

    /// Reduce to {v}; empties the domain when v is absent.
    bool assign(Value v) {
        if (fixed() && value() == v) return false;
        bool present = contains(v);
        ranges_.clear();
        if (present) ranges_.push_back({v, v});
        return true;
    }

    template <class Pred>
    bool remove_if(Pred pred) {
        std::vector<Value> kept;
        bool changed = false;
        for_each([&](Value v) {
            if (pred(v))
                changed = true;
            else
                kept.push_back(v);
        });
        if (changed) *this = of(std::move(kept));
        return changed;
    }

    template <class F>
    void for_each(F&& f) const {
        for (const auto& r : ranges_)
            for (Value v = r.lo;; ++v) {
                f(v);
                if (v == r.hi) break;
            }
    }

    std::vector<Value> values() const {
        std::vector<Value> out;
        out.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(size(), 1u << 20)));
        for_each([&](Value v) { out.push_back(v); });
        return out;
    }

    const std::vector<Range>& ranges() const noexcept { return ranges_; }

    bool subset_of(const Domain& other) const {
        for (const auto& r : ranges_) {
            bool covered = false;
            for (const auto& o : other.ranges_)
                if (o.lo <= r.lo && r.hi <= o.hi) {
                    covered = true;
                    break;
                }
            if (!covered) return false;
        }
        return true;
    }

    friend bool operator==(const Domain&, const Domain&) = default;

private:
    std::vector<Range> ranges_;
};

} // namespace lpcsp::fd

#endif // LPCSP_FD_DOMAIN_HPP
