#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "blochdiff/config.hpp"
#include "blochdiff/criteria.hpp"
#include "blochdiff/verify.hpp"

namespace blochdiff {

namespace detail {

inline ojson cplx_json(Cplx z) { return ojson::array({z.real(), z.imag()}); }

inline ojson boundary_json(const BoundaryEstimate& b) {
    ojson j;
    j["value"] = b.value;
    j["empty_region"] = b.empty_region;
    j["sparse"] = b.sparse;
    if (b.first_empty_level >= 0) j["first_empty_level"] = b.first_empty_level;
    ojson trace = ojson::array();
    for (const auto& lvl : b.trace)
        trace.push_back(ojson::array({lvl.level, lvl.r, lvl.samples, lvl.sup}));
    j["trace"] = trace;
    return j;
}

} // namespace detail

inline ojson report_to_json(const CriterionReport& rep, const RunConfig& config) {
    ojson j;
    j["schema"] = "blochdiff-report/1";
    j["config"] = config_to_json(config);

    ojson q;
    q["q_t"] = ojson{{"combo1", rep.q_t.combo1},
                     {"combo2", rep.q_t.combo2},
                     {"value", rep.q_t.value},
                     {"sum3", rep.q_t.sum3},
                     {"sup_t1_rho", rep.q_t.sup_t1_rho},
                     {"sup_t2_rho", rep.q_t.sup_t2_rho},
                     {"sup_tdiff", rep.q_t.sup_tdiff}};
    q["q_test"] = ojson{{"f", rep.q_test.sup_f},
                        {"g", rep.q_test.sup_g},
                        {"value", rep.q_test.value},
                        {"arg_f", detail::cplx_json(rep.q_test.arg_f)},
                        {"arg_g", detail::cplx_json(rep.q_test.arg_g)}};
    q["q_pow"] = ojson{{"value", rep.q_pow.value},
                       {"arg_n", rep.q_pow.arg_n},
                       {"n0_degenerate", rep.q_pow.n0_degenerate}};
    q["e_t"] = ojson{{"term_t1", rep.e_t.term_t1},
                     {"term_t2", rep.e_t.term_t2},
                     {"term_diff", rep.e_t.term_diff},
                     {"value", rep.e_t.value},
                     {"t1", detail::boundary_json(rep.e_t.detail_t1)},
                     {"t2", detail::boundary_json(rep.e_t.detail_t2)},
                     {"tdiff", detail::boundary_json(rep.e_t.detail_diff)}};
    q["e_test"] = ojson{{"f", rep.e_test.f_limsup},
                        {"g", rep.e_test.g_limsup},
                        {"value", rep.e_test.value}};
    q["e_pow"] = ojson{{"value", rep.e_pow.value},
                       {"arg_n", rep.e_pow.arg_n},
                       {"loglog_slope", rep.e_pow.loglog_slope}};
    q["oracle"] = ojson{{"value", rep.oracle.value}, {"witness", rep.oracle.witness}};
    j["quantities"] = q;
    j["diagnostics"] = ojson{{"overflow_points", rep.overflow_points}};

    ojson traces;
    ojson ntr = ojson::array();
    for (const auto& r : rep.n_trace.rows) ntr.push_back(ojson::array({r.n, r.norm, r.term}));
    traces["n"] = ntr;
    ojson atr = ojson::array();
    for (const auto& r : rep.a_trace)
        atr.push_back(ojson::array({r.a.real(), r.a.imag(), r.f_norm, r.g_norm}));
    traces["a"] = atr;
    j["traces"] = traces;
    return j;
}

inline void n_trace_csv(const CriterionReport& rep, std::ostream& os) {
    os << "n,term\n";
    for (const auto& r : rep.n_trace.rows) os << r.n << "," << r.term << "\n";
}

inline void a_trace_csv(const CriterionReport& rep, std::ostream& os) {
    os << "abs_a,arg_a,f_norm,g_norm\n";
    for (const auto& r : rep.a_trace)
        os << std::abs(r.a) << "," << std::arg(r.a) << "," << r.f_norm << "," << r.g_norm << "\n";
}

inline void r_trace_csv(const CriterionReport& rep, std::ostream& os) {
    os << "term,level,r,samples,sup\n";
    auto block = [&](const char* name, const BoundaryEstimate& b) {
        for (const auto& lvl : b.trace)
            os << name << "," << lvl.level << "," << lvl.r << "," << lvl.samples << "," << lvl.sup
               << "\n";
    };
    block("t1_rho", rep.e_t.detail_t1);
    block("t2_rho", rep.e_t.detail_t2);
    block("tdiff", rep.e_t.detail_diff);
}

inline ojson outcome_to_json(const CheckOutcome& oc) {
    ojson j;
    j["name"] = oc.name;
    j["family"] = oc.family;
    j["pass"] = oc.pass;
    j["margin"] = oc.margin;
    j["constant"] = oc.constant;
    j["witness"] = oc.witness;
    j["note"] = oc.note;
    return j;
}

inline ojson outcomes_to_json(const std::vector<CheckOutcome>& ocs) {
    ojson arr = ojson::array();
    for (const auto& oc : ocs) arr.push_back(outcome_to_json(oc));
    return arr;
}

inline void outcome_table(const std::vector<CheckOutcome>& ocs, std::ostream& os) {
    os << "check                          pass   margin        constant      witness\n";
    os << "-----                          ----   ------        --------      -------\n";
    for (const auto& oc : ocs) {
        std::string name = oc.name;
        if (name.size() < 30) name.resize(30, ' ');
        os << name << " " << (oc.pass ? "PASS" : "FAIL") << "   ";
        char buf[64];
        std::snprintf(buf, sizeof buf, "%-13.6g %-13.6g ", oc.margin, oc.constant);
        os << buf << oc.witness << "\n";
    }
}

} // namespace blochdiff
