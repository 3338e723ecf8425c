#include "freydlab/mat.hpp"

#include <sstream>

namespace freydlab {

Mat Mat::from_rows(const Ring& ring, const std::vector<std::vector<mpq_class>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    Mat m(ring, r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c)
            throw Error("BadShape", "ragged rows");
        for (int j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
}

Mat Mat::operator*(const Mat& o) const {
    check_same(o);
    if (cols_ != o.rows_)
        throw Error("DimMismatch", "product shapes " + std::to_string(rows_) + "x" +
                                       std::to_string(cols_) + " * " + std::to_string(o.rows_) +
                                       "x" + std::to_string(o.cols_));
    Mat r(ring_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const mpq_class& aik = at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < o.cols_; ++j)
                if (o.at(k, j) != 0) r.set(i, j, r.at(i, j) + aik * o.at(k, j));
        }
    return r;
}

Mat Mat::operator+(const Mat& o) const {
    check_same(o);
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("DimMismatch", "sum shapes differ");
    Mat r(ring_, rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.set(i, j, at(i, j) + o.at(i, j));
    return r;
}

Mat Mat::operator-(const Mat& o) const { return *this + (-o); }

Mat Mat::operator-() const {
    Mat r(ring_, rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.set(i, j, -at(i, j));
    return r;
}

Mat Mat::scaled(const mpq_class& c) const {
    Mat r(ring_, rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.set(i, j, c * at(i, j));
    return r;
}

Mat Mat::transpose() const {
    Mat r(ring_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.set(j, i, at(i, j));
    return r;
}

Mat Mat::hstack(const Mat& o) const {
    check_same(o);
    if (rows_ != o.rows_) throw Error("DimMismatch", "hstack row counts differ");
    Mat r(ring_, rows_, cols_ + o.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) r.set(i, j, at(i, j));
        for (int j = 0; j < o.cols_; ++j) r.set(i, cols_ + j, o.at(i, j));
    }
    return r;
}

Mat Mat::vstack(const Mat& o) const {
    check_same(o);
    if (cols_ != o.cols_) throw Error("DimMismatch", "vstack column counts differ");
    Mat r(ring_, rows_ + o.rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.set(i, j, at(i, j));
    for (int i = 0; i < o.rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.set(rows_ + i, j, o.at(i, j));
    return r;
}

Mat Mat::col_range(int from, int to) const {
    if (from < 0 || to > cols_ || from > to) throw Error("BadIndex", "col_range");
    Mat r(ring_, rows_, to - from);
    for (int i = 0; i < rows_; ++i)
        for (int j = from; j < to; ++j) r.set(i, j - from, at(i, j));
    return r;
}

Mat Mat::row_range(int from, int to) const {
    if (from < 0 || to > rows_ || from > to) throw Error("BadIndex", "row_range");
    Mat r(ring_, to - from, cols_);
    for (int i = from; i < to; ++i)
        for (int j = 0; j < cols_; ++j) r.set(i - from, j, at(i, j));
    return r;
}

bool Mat::is_zero() const {
    for (const auto& v : a_)
        if (v != 0) return false;
    return true;
}

std::string Mat::to_string() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (int j = 0; j < cols_; ++j) os << (j ? " " : "") << ring_.to_string(at(i, j));
    }
    os << "]";
    return os.str();
}

}  // namespace freydlab
