/* nott -- C API for the 2-automatic power series workbench.
 *
 * All functions returning pointers yield NULL on failure; functions returning
 * int yield a nott_status. nott_last_error() describes the most recent failure
 * on the calling thread. Strings returned by nott_*_print functions are heap
 * allocated and must be released with nott_string_free.
 */
#ifndef NOTT_H
#define NOTT_H

#include <stddef.h>
#include <stdint.h>

#ifndef NOTT_API
#define NOTT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct nott_poly nott_poly;     /* polynomial in F_p[t,X] */
typedef struct nott_aut nott_aut;       /* DFAO */
typedef struct nott_sols nott_sols;     /* list of solver results */

typedef enum nott_status {
    NOTT_OK = 0,
    NOTT_ERR_PARSE = 1,
    NOTT_ERR_DOMAIN = 2,
    NOTT_ERR_NOT_EXACT = 3,
    NOTT_ERR_LIMIT = 4,
    NOTT_ERR_IO = 5,
    NOTT_ERR_INTERNAL = 6
} nott_status;

NOTT_API const char* nott_last_error(void);
NOTT_API void nott_string_free(char* s);

/* ---- polynomials (text format: variables t and X, operators + * ^) ---- */
NOTT_API nott_poly* nott_poly_parse(const char* text, int p);
NOTT_API char* nott_poly_print(const nott_poly* f);
NOTT_API long nott_poly_deg_x(const nott_poly* f);
NOTT_API long nott_poly_deg_t(const nott_poly* f);
NOTT_API void nott_poly_free(nott_poly* f);

/* ---- automata (codec: p=, states=, then "<label> <to0> <to1> ...") ---- */
NOTT_API nott_aut* nott_aut_parse(const char* text);
NOTT_API nott_aut* nott_aut_read(const char* path);
NOTT_API nott_status nott_aut_write(const nott_aut* a, const char* path);
NOTT_API char* nott_aut_print(const nott_aut* a);
NOTT_API char* nott_aut_dot(const nott_aut* a);
NOTT_API long nott_aut_states(const nott_aut* a);
NOTT_API int nott_aut_p(const nott_aut* a);
NOTT_API int nott_aut_validate(const nott_aut* a, char** report);
NOTT_API int nott_aut_coeff(const nott_aut* a, uint64_t k);
NOTT_API char* nott_aut_series(const nott_aut* a, long n);
NOTT_API nott_aut* nott_aut_minimize(const nott_aut* a);
NOTT_API int nott_aut_equal_series(const nott_aut* a, const nott_aut* b);
NOTT_API void nott_aut_free(nott_aut* a);

/* ---- equation -> automata ---- */
/* method: "ore", "diagonal" or "both" */
NOTT_API nott_sols* nott_solve(const nott_poly* f, const char* prefix, const char* method,
                               long series_prec);
NOTT_API long nott_sols_count(const nott_sols* s);
NOTT_API nott_aut* nott_sols_aut(const nott_sols* s, long i);
NOTT_API char* nott_sols_series(const nott_sols* s, long i);
NOTT_API void nott_sols_free(nott_sols* s);

/* ---- automaton -> equation, order, breaks ---- */
NOTT_API nott_poly* nott_guess_equation(const nott_aut* a);
/* order of the series under composition; *order = 2^n, or 0 when not finite
 * up to the cap; *certified reports exact certification vs truncated filter */
NOTT_API nott_status nott_order(const nott_aut* a, int nmax, int exact, long* order,
                                int* certified, long* filter_prec);
NOTT_API nott_status nott_breaks(const nott_aut* a, int n, long* out);
/* one resultant-squaring step applied n times; returns the new equation and
 * writes the composed series into *series_out */
NOTT_API nott_poly* nott_compose_power(const nott_poly* f, const char* prefix, int n,
                                       char** series_out);

/* ---- classification and synchronization ---- */
NOTT_API char* nott_classify(const nott_aut* a, const nott_poly* f_or_null, long mmax);
NOTT_API char* nott_sync(const nott_aut* a);

/* ---- enumeration (writes automata plus a manifest into out_dir) ---- */
NOTT_API nott_status nott_enumerate(int max_states, int order_log2, int workers,
                                    const char* out_dir, long* found);

/* ---- catalog ---- */
NOTT_API char* nott_catalog_verify(const char* name_or_null, const char* dir_or_null,
                                   int workers, int* pass);
NOTT_API char* nott_catalog_list(const char* dir_or_null);

/* ---- Witt-vector break prediction ----
 * terms: "i:(a0,a1,...);j:(b0,b1,...)" with odd indices i, components in F_2 */
NOTT_API nott_status nott_witt_breaks(const char* terms, int n, long* lower, long* upper);

#ifdef __cplusplus
}
#endif

#endif /* NOTT_H */
