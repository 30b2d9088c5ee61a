#include "floq/pauli.hpp"

#include <bit>

namespace floq {

SparsePauliOperator::SparsePauliOperator(int sites) : sites_(sites) {
    if (sites < 1 || sites > kMaxSites) throw ConfigError("operator site count must be in 1..14");
}

SparsePauliOperator& SparsePauliOperator::add_term(cplx coefficient, std::map<int, SiteAction> actions) {
    CompiledTerm compiled;
    compiled.coefficient = coefficient;
    for (const auto& [site, action] : actions) {
        if (site < 1 || site > sites_)
            throw SiteOutOfRange("operator acts on site " + std::to_string(site) +
                                 " outside 1.." + std::to_string(sites_));
        const std::uint64_t bit = std::uint64_t{1} << (site - 1);
        switch (action) {
        case SiteAction::X:
            compiled.flip_mask |= bit;
            break;
        case SiteAction::Z:
            compiled.sign_mask |= bit;
            break;
        case SiteAction::Raise:
            compiled.flip_mask |= bit;
            compiled.require_zero |= bit;
            break;
        case SiteAction::Lower:
            compiled.flip_mask |= bit;
            compiled.require_one |= bit;
            break;
        }
    }
    terms_.push_back(PauliTerm{coefficient, std::move(actions)});
    compiled_.push_back(compiled);
    return *this;
}

SparsePauliOperator& SparsePauliOperator::add_z(int site, double coefficient) {
    return add_term(cplx(coefficient, 0.0), {{site, SiteAction::Z}});
}

SparsePauliOperator& SparsePauliOperator::add_xx(int left_site, double coefficient) {
    return add_term(cplx(coefficient, 0.0),
                    {{left_site, SiteAction::X}, {left_site + 1, SiteAction::X}});
}

SparsePauliOperator& SparsePauliOperator::add_ladder_pair(int left_site, SiteAction first,
                                                          SiteAction second, cplx coefficient) {
    return add_term(coefficient, {{left_site, first}, {left_site + 1, second}});
}

void accumulate_operator(const SparsePauliOperator& op, const cplx* in, cplx* out) {
    const std::size_t dim = op.dim();
    for (const auto& term : op.compiled()) {
        const cplx c = term.coefficient;
        if (term.require_zero == 0 && term.require_one == 0 && term.sign_mask == 0) {
            for (std::size_t i = 0; i < dim; ++i) out[i ^ term.flip_mask] += c * in[i];
        } else {
            const int z_sites = std::popcount(term.sign_mask);
            for (std::size_t i = 0; i < dim; ++i) {
                if ((i & term.require_zero) != 0) continue;
                if ((i & term.require_one) != term.require_one) continue;
                // prod of sigma^z eigenvalues: bit set -> +1, clear -> -1
                const int down = z_sites - std::popcount(i & term.sign_mask);
                const cplx amp = c * in[i];
                out[i ^ term.flip_mask] += (down & 1) ? -amp : amp;
            }
        }
    }
}

StateVector apply_operator(const SparsePauliOperator& op, const StateVector& state) {
    if (state.dim() != op.dim())
        throw DimensionMismatch("operator dim " + std::to_string(op.dim()) + " vs state dim " +
                                std::to_string(state.dim()));
    std::vector<cplx> out(state.dim(), cplx(0.0, 0.0));
    accumulate_operator(op, state.data(), out.data());
    return StateVector::raw(std::move(out));
}

cplx expectation(const SparsePauliOperator& op, const StateVector& state) {
    return inner_product(state, apply_operator(op, state));
}

} // namespace floq
