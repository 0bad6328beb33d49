#include "qlmwkb.h"

#include "qlmwkb/emit.hpp"
#include "qlmwkb/errors.hpp"
#include "qlmwkb/qlm.hpp"
#include "qlmwkb/riccati.hpp"
#include "qlmwkb/series.hpp"
#include "qlmwkb/shooting.hpp"
#include "qlmwkb/spectra.hpp"
#include "qlmwkb/verify.hpp"
#include "qlmwkb/version.hpp"
#include "qlmwkb/wkb.hpp"

#include <json.hpp>

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

struct qlmwkb_series {
    qlmwkb::GradedSeries s;
};

struct qlmwkb_potential {
    qlmwkb::PotentialSpec spec;
};

struct qlmwkb_solution {
    qlmwkb::IterateHistory h;
};

namespace {

thread_local std::string g_last_error = "no error";

int fail(int code, const char* what) {
    g_last_error = what;
    return code;
}

// Runs the body, translating exceptions into status codes.
template <typename Fn>
int guarded(Fn&& body) {
    try {
        body();
        return QLMWKB_OK;
    } catch (const qlmwkb::Error& e) {
        return fail(static_cast<int>(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(QLMWKB_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(QLMWKB_ERR_INTERNAL, e.what());
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void require_arg(const void* p, const char* name) {
    if (!p) throw qlmwkb::UsageError(std::string(name) + " must not be NULL");
}

}  // namespace

extern "C" {

const char* qlmwkb_version(void) { return qlmwkb::version_string; }

const char* qlmwkb_last_error(void) { return g_last_error.c_str(); }

void qlmwkb_string_free(char* s) { std::free(s); }

int qlmwkb_wkb_series(int order_cap, qlmwkb_series** out) {
    return guarded([&] {
        require_arg(out, "out");
        *out = new qlmwkb_series{qlmwkb::wkb_terms(order_cap)};
    });
}

int qlmwkb_qlm_series(int p, int order_cap, qlmwkb_series** out) {
    return guarded([&] {
        require_arg(out, "out");
        *out = new qlmwkb_series{qlmwkb::qlm_pth_series(p, order_cap)};
    });
}

int qlmwkb_series_parse(const char* text, qlmwkb_series** out) {
    return guarded([&] {
        require_arg(text, "text");
        require_arg(out, "out");
        *out = new qlmwkb_series{qlmwkb::parse_series(text)};
    });
}

int qlmwkb_series_emit(const qlmwkb_series* s, const char* format, char** out) {
    return guarded([&] {
        require_arg(s, "series");
        require_arg(format, "format");
        require_arg(out, "out");
        std::string text;
        switch (qlmwkb::emit_format_from_string(format)) {
            case qlmwkb::EmitFormat::text:
                text = qlmwkb::to_text(s->s);
                break;
            case qlmwkb::EmitFormat::json:
                text = qlmwkb::to_json(s->s).dump(2);
                break;
            case qlmwkb::EmitFormat::latex:
                text = qlmwkb::to_latex(s->s);
                break;
        }
        *out = dup_string(text);
    });
}

int qlmwkb_series_order_cap(const qlmwkb_series* s, int* out) {
    return guarded([&] {
        require_arg(s, "series");
        require_arg(out, "out");
        *out = s->s.order_cap();
    });
}

int qlmwkb_series_match_prefix(const qlmwkb_series* a, const qlmwkb_series* b, int* out) {
    return guarded([&] {
        require_arg(a, "a");
        require_arg(b, "b");
        require_arg(out, "out");
        *out = qlmwkb::match_prefix(a->s, b->s);
    });
}

void qlmwkb_series_free(qlmwkb_series* s) { delete s; }

int qlmwkb_potential_create(const char* kind, const char* const* names, const double* values,
                            size_t nparams, qlmwkb_potential** out) {
    return guarded([&] {
        require_arg(kind, "kind");
        require_arg(out, "out");
        if (nparams > 0) {
            require_arg(names, "names");
            require_arg(values, "values");
        }
        std::map<std::string, double> params;
        for (size_t i = 0; i < nparams; ++i) {
            require_arg(names[i], "names[i]");
            params[names[i]] = values[i];
        }
        *out = new qlmwkb_potential{
            qlmwkb::make_potential(qlmwkb::potential_kind_from_string(kind), std::move(params))};
    });
}

void qlmwkb_potential_free(qlmwkb_potential* p) { delete p; }

int qlmwkb_level(const qlmwkb_potential* p, const char* method, int n, double* energy,
                 int* status) {
    return guarded([&] {
        require_arg(p, "potential");
        require_arg(method, "method");
        require_arg(energy, "energy");
        require_arg(status, "status");
        const qlmwkb::LevelResult r =
            qlmwkb::levels(p->spec, qlmwkb::method_from_string(method), n);
        *energy = r.energy;
        *status = (r.status == qlmwkb::LevelStatus::ok) ? 0 : 1;
    });
}

int qlmwkb_bound_state_count(const qlmwkb_potential* p, int* count) {
    return guarded([&] {
        require_arg(p, "potential");
        require_arg(count, "count");
        const auto n = qlmwkb::bound_state_count(p->spec);
        *count = n ? *n : -1;
    });
}

int qlmwkb_shooting_level(const qlmwkb_potential* p, int n, double* energy) {
    return guarded([&] {
        require_arg(p, "potential");
        require_arg(energy, "energy");
        *energy = qlmwkb::shooting_oracle(p->spec, n);
    });
}

void qlmwkb_solve_config_default(qlmwkb_solve_config* cfg) {
    if (!cfg) return;
    const qlmwkb::SolveConfig d;
    cfg->z_min = d.z_min;
    cfg->z_max = d.z_max;
    cfg->grid_points = d.grid_points;
    cfg->delta = d.delta;
    cfg->ode_rel_tol = d.ode_rel_tol;
    cfg->ode_abs_tol = d.ode_abs_tol;
    cfg->quadrature_order = d.quadrature_order;
}

int qlmwkb_solve(const qlmwkb_potential* p, double energy, int p_max,
                 const qlmwkb_solve_config* cfg, qlmwkb_solution** out) {
    return guarded([&] {
        require_arg(p, "potential");
        require_arg(out, "out");
        qlmwkb::SolveConfig c;
        if (cfg) {
            c.z_min = cfg->z_min;
            c.z_max = cfg->z_max;
            c.grid_points = cfg->grid_points;
            c.delta = cfg->delta;
            c.ode_rel_tol = cfg->ode_rel_tol;
            c.ode_abs_tol = cfg->ode_abs_tol;
            c.quadrature_order = cfg->quadrature_order;
        }
        if (c.z_max <= 0.0) c.z_max = qlmwkb::default_z_max(p->spec, energy);
        *out = new qlmwkb_solution{qlmwkb::solve_qlm(p->spec, energy, p_max, c)};
    });
}

int qlmwkb_solution_iterates(const qlmwkb_solution* s, int* out) {
    return guarded([&] {
        require_arg(s, "solution");
        require_arg(out, "out");
        *out = static_cast<int>(s->h.iterates.size());
    });
}

int qlmwkb_solution_grid_points(const qlmwkb_solution* s, size_t* out) {
    return guarded([&] {
        require_arg(s, "solution");
        require_arg(out, "out");
        *out = s->h.iterates.empty() ? 0 : s->h.iterates.front().grid.size();
    });
}

int qlmwkb_solution_sample(const qlmwkb_solution* s, int p, size_t i, double* z, double* re,
                           double* im) {
    return guarded([&] {
        require_arg(s, "solution");
        require_arg(z, "z");
        require_arg(re, "re");
        require_arg(im, "im");
        if (p < 0 || p >= static_cast<int>(s->h.iterates.size()))
            throw qlmwkb::UsageError("iterate index out of range");
        const qlmwkb::SampledFunction& f = s->h.iterates[p];
        if (i >= f.grid.size()) throw qlmwkb::UsageError("sample index out of range");
        *z = f.grid[i];
        *re = f.values[i].real();
        *im = f.values[i].imag();
    });
}

int qlmwkb_solution_sup_diff(const qlmwkb_solution* s, int p, double* out) {
    return guarded([&] {
        require_arg(s, "solution");
        require_arg(out, "out");
        if (p < 1 || p > static_cast<int>(s->h.sup_diffs.size()))
            throw qlmwkb::UsageError("sup_diff index out of range");
        *out = s->h.sup_diffs[p - 1];
    });
}

int qlmwkb_solution_residue_fit(const qlmwkb_solution* s, int p, const char* model, double energy,
                                double* out) {
    return guarded([&] {
        require_arg(s, "solution");
        require_arg(model, "model");
        require_arg(out, "out");
        if (p < 0 || p >= static_cast<int>(s->h.iterates.size()))
            throw qlmwkb::UsageError("iterate index out of range");
        *out = qlmwkb::asymptotic_residue_fit(s->h.iterates[p],
                                              qlmwkb::asymptotic_model_from_string(model), energy);
    });
}

void qlmwkb_solution_free(qlmwkb_solution* s) { delete s; }

int qlmwkb_verify(const char* suite, char** report, int* all_passed) {
    return guarded([&] {
        require_arg(suite, "suite");
        require_arg(report, "report");
        require_arg(all_passed, "all_passed");
        const auto results = qlmwkb::run_verification(qlmwkb::verify_suite_from_string(suite));
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : results) {
            arr.push_back({{"index", r.index},
                           {"name", r.name},
                           {"passed", r.passed},
                           {"detail", r.detail},
                           {"seconds", r.seconds}});
        }
        nlohmann::json doc = {{"suite", suite},
                              {"criteria", arr},
                              {"all_passed", qlmwkb::all_passed(results)}};
        *report = dup_string(doc.dump(2));
        *all_passed = qlmwkb::all_passed(results) ? 1 : 0;
    });
}

}  // extern "C"
