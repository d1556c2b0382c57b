/* C interface to the fraudlens toolkit: opaque handles, integer status
 * codes, and UTF-8 strings. Status codes double as CLI exit codes:
 * 0 success, 1 data error, 2 usage error.
 */
#ifndef FRAUDLENS_H
#define FRAUDLENS_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
    FL_OK = 0,
    FL_E_DATA = 1,
    FL_E_USAGE = 2
};

typedef struct fl_context fl_context; /* error + output state for one caller */
typedef struct fl_opts fl_opts;       /* layered key/value option bag */

const char* fl_version(void);

fl_context* fl_context_new(void);
void fl_context_free(fl_context* ctx);
/* Message for the last failed call on this context; "" when none. */
const char* fl_context_error(const fl_context* ctx);
/* Printable output of the last successful command on this context. */
const char* fl_context_output(const fl_context* ctx);

fl_opts* fl_opts_new(void);
void fl_opts_free(fl_opts* opts);
/* Later writes win; apply config file first, flags second, env last. */
int fl_opts_set(fl_context* ctx, fl_opts* opts, const char* key, const char* value);
int fl_opts_load_file(fl_context* ctx, fl_opts* opts, const char* path);
int fl_opts_apply_env(fl_context* ctx, fl_opts* opts);

/* Commands. Each reads its inputs from the option bag and leaves its
 * summary on fl_context_output. */
int fl_cmd_plan(fl_context* ctx, const fl_opts* opts);
int fl_cmd_generate(fl_context* ctx, const fl_opts* opts);
int fl_cmd_validate(fl_context* ctx, const fl_opts* opts);
int fl_cmd_evaluate(fl_context* ctx, const fl_opts* opts);
int fl_cmd_compare(fl_context* ctx, const fl_opts* opts);
int fl_cmd_parse(fl_context* ctx, const fl_opts* opts);
int fl_cmd_prompt(fl_context* ctx, const fl_opts* opts);

/* Library primitives. Returned strings are heap-allocated; release them
 * with fl_string_free. NULL return means failure (see fl_context_error). */
char* fl_repair_json(fl_context* ctx, const char* raw);
char* fl_parse_analysis(fl_context* ctx, const char* raw);
char* fl_build_prompt(fl_context* ctx, const char* mode, const char* narrative);
char* fl_label_space(fl_context* ctx);
void fl_string_free(char* s);

/* Exponential backoff delay in seconds for a 1-based attempt number. */
double fl_backoff_delay(int attempt, double base, double mult, double cap);

#ifdef __cplusplus
}
#endif

#endif /* FRAUDLENS_H */
