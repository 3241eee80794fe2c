#ifndef SPROUTFORGE_SPARSE_HPP
#define SPROUTFORGE_SPARSE_HPP

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "sproutforge/rational.hpp"

namespace sforge::linalg {

// Sorted (index, value) pairs, no zeros stored.
class SparseVector {
public:
    using Entry = std::pair<int, Rational>;

    SparseVector() = default;

    static SparseVector from_entries(std::vector<Entry> entries) {
        std::sort(entries.begin(), entries.end(),
                  [](const Entry& a, const Entry& b) { return a.first < b.first; });
        SparseVector v;
        for (auto& e : entries) {
            if (!v.ent_.empty() && v.ent_.back().first == e.first)
                v.ent_.back().second += e.second;
            else
                v.ent_.push_back(std::move(e));
        }
        v.prune();
        return v;
    }

    void set(int i, const Rational& x) {
        auto it = std::lower_bound(ent_.begin(), ent_.end(), i,
                                   [](const Entry& e, int j) { return e.first < j; });
        if (it != ent_.end() && it->first == i) {
            if (is_zero(x)) ent_.erase(it);
            else it->second = x;
        } else if (!is_zero(x)) {
            ent_.insert(it, {i, x});
        }
    }

    Rational get(int i) const {
        auto it = std::lower_bound(ent_.begin(), ent_.end(), i,
                                   [](const Entry& e, int j) { return e.first < j; });
        if (it != ent_.end() && it->first == i) return it->second;
        return Rational(0);
    }

    bool empty() const { return ent_.empty(); }
    std::size_t nnz() const { return ent_.size(); }
    const std::vector<Entry>& entries() const { return ent_; }

    int leading_index() const { return ent_.empty() ? -1 : ent_.front().first; }

    // this += c * other, merging sorted entry lists.
    void axpy(const Rational& c, const SparseVector& other) {
        if (is_zero(c) || other.ent_.empty()) return;
        std::vector<Entry> out;
        out.reserve(ent_.size() + other.ent_.size());
        auto a = ent_.begin();
        auto b = other.ent_.begin();
        while (a != ent_.end() || b != other.ent_.end()) {
            if (b == other.ent_.end() || (a != ent_.end() && a->first < b->first)) {
                out.push_back(*a++);
            } else if (a == ent_.end() || b->first < a->first) {
                Rational v = c * b->second;
                if (!is_zero(v)) out.emplace_back(b->first, std::move(v));
                ++b;
            } else {
                Rational v = a->second + c * b->second;
                if (!is_zero(v)) out.emplace_back(a->first, std::move(v));
                ++a; ++b;
            }
        }
        ent_ = std::move(out);
    }

    void scale(const Rational& c) {
        if (is_zero(c)) { ent_.clear(); return; }
        for (auto& e : ent_) e.second *= c;
    }

    Rational dot(const SparseVector& other) const {
        Rational acc(0);
        auto a = ent_.begin();
        auto b = other.ent_.begin();
        while (a != ent_.end() && b != other.ent_.end()) {
            if (a->first < b->first) ++a;
            else if (b->first < a->first) ++b;
            else { acc += a->second * b->second; ++a; ++b; }
        }
        return acc;
    }

    bool operator==(const SparseVector& o) const { return ent_ == o.ent_; }

private:
    void prune() {
        ent_.erase(std::remove_if(ent_.begin(), ent_.end(),
                                  [](const Entry& e) { return is_zero(e.second); }),
                   ent_.end());
    }

    std::vector<Entry> ent_;
};

// Immutable once built; row-major.  Indices are checked on insertion.
class SparseMatrix {
public:
    SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), row_(rows) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    void set(int r, int c, const Rational& x) {
        check(r, c);
        row_[r].set(c, x);
    }

    void add(int r, int c, const Rational& x) {
        check(r, c);
        row_[r].set(c, row_[r].get(c) + x);
    }

    void set_row(int r, SparseVector v) {
        if (r < 0 || r >= rows_) throw UsageError("row index out of range");
        if (!v.entries().empty() && v.entries().back().first >= cols_)
            throw UsageError("column index out of range");
        row_[r] = std::move(v);
    }

    const SparseVector& row(int r) const { return row_[r]; }

    Rational get(int r, int c) const {
        check(r, c);
        return row_[r].get(c);
    }

    std::size_t nnz() const {
        std::size_t n = 0;
        for (const auto& r : row_) n += r.nnz();
        return n;
    }

    // A * x for a sparse x (returns dense-as-sparse result of length rows()).
    SparseVector apply(const SparseVector& x) const {
        std::vector<SparseVector::Entry> out;
        for (int r = 0; r < rows_; ++r) {
            Rational v = row_[r].dot(x);
            if (!is_zero(v)) out.emplace_back(r, std::move(v));
        }
        return SparseVector::from_entries(std::move(out));
    }

private:
    void check(int r, int c) const {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
            throw UsageError("matrix index out of range");
    }

    int rows_, cols_;
    std::vector<SparseVector> row_;
};

} // namespace sforge::linalg

#endif
