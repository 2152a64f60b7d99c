#ifndef ASNUM_GF_TABLE_HPP
#define ASNUM_GF_TABLE_HPP

// Table arithmetic for fields of order at most 256. Elements are the
// enumeration indices of Fq, so conversion in either direction is exact.

#include <cstdint>
#include <vector>

#include "error.hpp"
#include "fields.hpp"

namespace asnum {

class GfTable {
  public:
    explicit GfTable(const FieldDescriptor& f) : f_(&f), q_(static_cast<unsigned>(f.order())) {
        require(f.order() <= 256, "table arithmetic needs a field of order at most 256");
        add_.resize(q_ * q_);
        mul_.resize(q_ * q_);
        neg_.resize(q_);
        inv_.resize(q_);
        frob_.resize(q_);
        std::vector<Fq> el;
        for (unsigned i = 0; i < q_; ++i) el.push_back(Fq::from_index(f, i));
        for (unsigned i = 0; i < q_; ++i) {
            neg_[i] = static_cast<std::uint8_t>((-el[i]).index());
            inv_[i] = i ? static_cast<std::uint8_t>(el[i].inv().index()) : 0;
            frob_[i] = static_cast<std::uint8_t>(el[i].frobenius(1).index());
            for (unsigned j = 0; j < q_; ++j) {
                add_[i * q_ + j] = static_cast<std::uint8_t>((el[i] + el[j]).index());
                mul_[i * q_ + j] = static_cast<std::uint8_t>((el[i] * el[j]).index());
            }
        }
    }

    const FieldDescriptor& field() const noexcept { return *f_; }
    unsigned order() const noexcept { return q_; }
    std::uint8_t add(std::uint8_t a, std::uint8_t b) const noexcept { return add_[a * q_ + b]; }
    std::uint8_t sub(std::uint8_t a, std::uint8_t b) const noexcept { return add_[a * q_ + neg_[b]]; }
    std::uint8_t mul(std::uint8_t a, std::uint8_t b) const noexcept { return mul_[a * q_ + b]; }
    std::uint8_t neg(std::uint8_t a) const noexcept { return neg_[a]; }
    std::uint8_t inv(std::uint8_t a) const noexcept { return inv_[a]; }
    std::uint8_t frobenius(std::uint8_t a) const noexcept { return frob_[a]; }
    std::uint8_t pow(std::uint8_t a, unsigned e) const noexcept {
        std::uint8_t r = 1;
        while (e--) r = mul(r, a);
        return r;
    }
    // Image of an integer in the prime field.
    std::uint8_t from_int(long long n) const {
        long long r = n % static_cast<long long>(f_->p());
        if (r < 0) r += f_->p();
        return static_cast<std::uint8_t>(r);
    }
    Fq element(std::uint8_t a) const { return Fq::from_index(*f_, a); }
    static std::uint8_t index(const Fq& a) { return static_cast<std::uint8_t>(a.index()); }

    // Rank of a row-major rows x cols matrix; the buffer is destroyed.
    std::size_t rank(std::uint8_t* m, std::size_t rows, std::size_t cols) const {
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols && r < rows; ++c) {
            std::size_t piv = r;
            while (piv < rows && m[piv * cols + c] == 0) ++piv;
            if (piv == rows) continue;
            if (piv != r)
                for (std::size_t j = c; j < cols; ++j) std::swap(m[piv * cols + j], m[r * cols + j]);
            const std::uint8_t iv = inv(m[r * cols + c]);
            for (std::size_t i = r + 1; i < rows; ++i) {
                const std::uint8_t a = m[i * cols + c];
                if (!a) continue;
                const std::uint8_t s = neg(mul(a, iv));
                for (std::size_t j = c; j < cols; ++j) m[i * cols + j] = add(m[i * cols + j], mul(s, m[r * cols + j]));
            }
            ++r;
        }
        return r;
    }

  private:
    const FieldDescriptor* f_;
    unsigned q_;
    std::vector<std::uint8_t> add_, mul_, neg_, inv_, frob_;
};

}  // namespace asnum

#endif
