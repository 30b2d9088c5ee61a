#pragma once

#include "floq/state.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace floq {

/// Single-site actions appearing in the chain Hamiltonians.
enum class SiteAction : std::uint8_t { X, Z, Raise, Lower };

/// One product term c * prod_j A_j with A_j acting on distinct sites.
/// Site indices are 1-based (1..L).
struct PauliTerm {
    cplx coefficient;
    std::map<int, SiteAction> actions;
};

/// Sparse sum of Pauli/ladder product terms on an L-site chain.
class SparsePauliOperator {
  public:
    explicit SparsePauliOperator(int sites);

    SparsePauliOperator& add_term(cplx coefficient, std::map<int, SiteAction> actions);

    /// g * sigma^z_j
    SparsePauliOperator& add_z(int site, double coefficient);
    /// c * sigma^x_j sigma^x_{j+1}
    SparsePauliOperator& add_xx(int left_site, double coefficient);
    /// c * sigma^{+-}_j sigma^{+-}_{j+1} / flip-flop combinations
    SparsePauliOperator& add_ladder_pair(int left_site, SiteAction first, SiteAction second,
                                         cplx coefficient);

    int sites() const { return sites_; }
    std::size_t dim() const { return std::size_t{1} << sites_; }
    std::size_t term_count() const { return terms_.size(); }
    const std::vector<PauliTerm>& terms() const { return terms_; }

    /// out[i ^ flip] += coeff * sign(i) * in[i] for every surviving i.
    struct CompiledTerm {
        cplx coefficient;
        std::uint64_t flip_mask = 0;      // bits toggled by X / raise / lower
        std::uint64_t sign_mask = 0;      // bits whose value contributes a (-1)
        std::uint64_t require_zero = 0;   // raise: input bit must be 0
        std::uint64_t require_one = 0;    // lower: input bit must be 1
    };
    const std::vector<CompiledTerm>& compiled() const { return compiled_; }

  private:
    int sites_;
    std::vector<PauliTerm> terms_;
    std::vector<CompiledTerm> compiled_;
};

/// Exact linear action; the result is generally unnormalized.
StateVector apply_operator(const SparsePauliOperator& op, const StateVector& state);

/// Accumulates op|in> into out (out must be pre-sized, is not cleared).
void accumulate_operator(const SparsePauliOperator& op, const cplx* in, cplx* out);

/// <state| op |state>. Throws DimensionMismatch.
cplx expectation(const SparsePauliOperator& op, const StateVector& state);

} // namespace floq
