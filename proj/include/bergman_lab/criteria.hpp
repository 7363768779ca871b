#pragma once

#include <string>
#include <vector>

#include "bergman_lab/geometry.hpp"
#include "bergman_lab/measures.hpp"
#include "bergman_lab/report.hpp"
#include "bergman_lab/space.hpp"

namespace bl {

// max over grid and ladder of mu^_r / u(Delta)^{1/p-1/q}; the mu~_t form is
// the child report "tilde" (resolved points only).
CriterionReport boundedness_index(const DiscMeasure& mu, const KernelModel& m, double p, double q, double t, double r,
                                  const std::vector<DiscPoint>& grid, const BoundaryLadder& ladder);

// Ring trend of the same quantity on the ladder.
CriterionReport compactness_index(const DiscMeasure& mu, const KernelModel& m, double p, double q, double t, double r,
                                  const BoundaryLadder& ladder);

enum class Reference { u_dA, dA };

const char* reference_name(Reference ref);

struct QlpOptions {
    Reference reference = Reference::u_dA;
    bool use_berezin = false;  // mu~_t instead of mu^_r
    int first_level = 3;       // R_k = 1 - 2^-k, k = first_level..last_level
    int last_level = 12;
};

// L^{pq/(p-q)} norm of mu^_r (or mu~_t) against u dA or dA on |z| <= R_k.
CriterionReport qlp_index(const DiscMeasure& mu, const KernelModel& m, double p, double q, double t, double r,
                          const QlpOptions& opt = {});

// Sub-indices (b) mu(S(a))/u(S(a))^{q/p}, (c) mu(Delta(a,r))/u(Delta(a,r))^{q/p},
// (e) int |(1-|w|^2)/(1-z conj(w))|^{qs} u(Delta(w,r))^{-q/p} dmu(z), with
// pairwise ratios. A ladder adds ring trends for (b) and (c).
CriterionReport carleson_test(const DiscMeasure& mu, const Weight& u, double p, double q, double r, double s, double p0,
                              const std::vector<DiscPoint>& anchors, const BoundaryLadder* ladder = nullptr);

// Ring trend of mu(S(a))/u(S(a))^{q/p} over the ladder.
CriterionReport vanishing_carleson_test(const DiscMeasure& mu, const Weight& u, double p, double q,
                                        const BoundaryLadder& ladder);

// Runs every equivalent condition of the applicable theorem. Children are the
// condition reports; values "<cond>.bounded" / "<cond>.compact" hold 0/1.
// Verdict: divergent (unbounded), finite (bounded, not compact), vanishing
// (compact) when all conditions agree, inconclusive otherwise.
CriterionReport theorem_consistency_report(const DiscMeasure& mu, ModelPtr m, double p, double q, double t, double r,
                                           double s, const BoundaryLadder& ladder);

struct ConsistencyRow {
    std::string condition;
    bool applicable = true;
    bool bounded = false;
    bool compact = false;
};

std::vector<ConsistencyRow> consistency_rows(const CriterionReport& rep);

}  // namespace bl
