#pragma once

#include <vector>

#include "freydlab/ring.hpp"

namespace freydlab {

// Dense matrix over one of the supported rings, row-major, exact entries.
// 0xm and mx0 matrices are legal; they carry empty presentations.
class Mat {
public:
    Mat(Ring ring, int rows, int cols)
        : ring_(std::move(ring)), rows_(rows), cols_(cols),
          a_(static_cast<size_t>(rows) * cols, mpq_class(0)) {
        if (rows < 0 || cols < 0) throw Error("BadShape", "negative dimension");
    }

    static Mat identity(const Ring& ring, int n) {
        Mat m(ring, n, n);
        for (int i = 0; i < n; ++i) m.set(i, i, 1);
        return m;
    }

    static Mat from_rows(const Ring& ring, const std::vector<std::vector<mpq_class>>& rows);

    const Ring& ring() const { return ring_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    const mpq_class& at(int i, int j) const { return a_[idx(i, j)]; }
    void set(int i, int j, const mpq_class& v) { a_[idx(i, j)] = ring_.canon(v); }

    Mat operator*(const Mat& o) const;
    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat operator-() const;
    Mat scaled(const mpq_class& c) const;
    Mat transpose() const;

    // [this | o] and [this ; o]
    Mat hstack(const Mat& o) const;
    Mat vstack(const Mat& o) const;
    Mat col_range(int from, int to) const;  // columns [from, to)
    Mat row_range(int from, int to) const;

    bool is_zero() const;
    bool operator==(const Mat& o) const {
        return ring_ == o.ring_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    size_t idx(int i, int j) const {
        if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
            throw Error("BadIndex", "matrix index out of range");
        return static_cast<size_t>(i) * cols_ + j;
    }
    void check_same(const Mat& o) const {
        if (ring_ != o.ring_) throw Error("RingMismatch", ring_.name() + " vs " + o.ring_.name());
    }

    Ring ring_;
    int rows_, cols_;
    std::vector<mpq_class> a_;
};

}  // namespace freydlab
