#pragma once

#include "chipfire/integer.hpp"

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

namespace chipfire {

// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Integer> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<Integer> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);

    // Deletes one row and one column.
    IntMatrix minor(std::size_t row, std::size_t col) const;

    IntMatrix transposed() const;

    bool is_diagonal() const;

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator*(const Integer& s, const IntMatrix& m);
std::vector<Integer> operator*(const IntMatrix& m, std::span<const Integer> v);

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

}  // namespace chipfire
