#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "hyperdecay/grid.hpp"
#include "hyperdecay/polyroots.hpp"
#include "hyperdecay/symbol.hpp"

namespace hyperdecay {

// Resultant of the polynomial and its derivative from the Sylvester matrix
// of size 2m-1, signed so that tau^2 + b tau + c gives b^2 - 4c.
cplx discriminant_of(std::span<const cplx> monic);
cplx discriminant_at(const OperatorSymbol& sym, std::span<const double> xi);
// <xi>^(m(m-1)); the symbol is monic so no leading-coefficient factor
double discriminant_scale(int m, std::span<const double> xi);

struct RootField {
    FrequencyGrid grid;
    int m = 0;
    std::vector<cplx> values;      // values[node * m + k], branch-labelled
    std::vector<cplx> disc;        // per node
    std::vector<double> disc_scale;
    std::vector<double> residual;  // worst root residual per node
    std::size_t seed = 0;

    std::size_t size() const { return grid.size(); }
    cplx root(std::size_t node, int k) const { return values[node * static_cast<std::size_t>(m) + static_cast<std::size_t>(k)]; }
    std::span<const cplx> roots(std::size_t node) const {
        return {values.data() + node * static_cast<std::size_t>(m), static_cast<std::size_t>(m)};
    }
    double normalized_disc(std::size_t node) const { return std::abs(disc[node]) / disc_scale[node]; }
    double min_im(std::size_t node) const;
};

RootField track_branches(const OperatorSymbol& sym, const FrequencyGrid& grid);

// Columns: xi_1..xi_n, branch, re_tau, im_tau, re_disc, im_disc
void write_root_field_csv(const RootField& field, std::ostream& os);

}  // namespace hyperdecay
