/* heartml C API.
 *
 * Every function returns a status code; out parameters are only written on
 * HML_OK. Strings returned through out parameters are heap allocated and must
 * be released with hml_string_free. Handles are opaque and must be released
 * with their matching *_free function. Handle creation and use is not thread
 * safe per handle; distinct handles may be used from distinct threads.
 * hml_last_error returns a thread-local message for the most recent failure
 * on the calling thread.
 */
#ifndef HEARTML_H
#define HEARTML_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hml_status {
    HML_OK = 0,
    HML_ERR_VALIDATION = 2,
    HML_ERR_IO = 3,
    HML_ERR_NUMERIC = 4,
    HML_ERR_INTERNAL = 5
} hml_status;

typedef struct hml_dataset hml_dataset;
typedef struct hml_matrix hml_matrix;
typedef struct hml_model hml_model;

/* Library version as "major.minor.patch"; static storage, do not free. */
const char* hml_version(void);

/* Message for the last failure on this thread; static storage, do not free.
 * Returns an empty string if no failure has occurred. */
const char* hml_last_error(void);

void hml_string_free(char* text);

/* ---- dataset ---------------------------------------------------------- */

hml_status hml_dataset_load(const char* csv_path, hml_dataset** out);
hml_status hml_dataset_row_count(const hml_dataset* dataset, size_t* out);
/* Number of rows labelled healthy (0) and heart disease (1). */
hml_status hml_dataset_label_counts(const hml_dataset* dataset, size_t* healthy,
                                    size_t* disease);
void hml_dataset_free(hml_dataset* dataset);

/* ---- feature matrix --------------------------------------------------- */

/* Engineer the 24-column feature matrix. When apply_minmax is nonzero the
 * numeric columns are min-max scaled over the whole dataset. */
hml_status hml_matrix_from_dataset(const hml_dataset* dataset, int apply_minmax,
                                   hml_matrix** out);
hml_status hml_matrix_dims(const hml_matrix* matrix, size_t* rows, size_t* cols);
hml_status hml_matrix_column_name(const hml_matrix* matrix, size_t column,
                                  char** out);
hml_status hml_matrix_export_csv(const hml_matrix* matrix, const char* path);
void hml_matrix_free(hml_matrix* matrix);

/* ---- models ----------------------------------------------------------- */

/* Train a model on the full matrix. config_json selects and parameterises the
 * model: {"kind": "multitask"|"mlp", "seed": <uint>, "config": {...}} where
 * the inner config object matches the trainer's JSON schema and may be
 * omitted for defaults. */
hml_status hml_model_train(const hml_matrix* matrix, const char* config_json,
                           hml_model** out);
hml_status hml_model_load(const char* path, hml_model** out);
hml_status hml_model_save(const hml_model* model, const char* path);
/* Probability of heart disease for each row, written to out[0..rows). */
hml_status hml_model_predict(const hml_model* model, const hml_matrix* matrix,
                             double* out, size_t out_len);
/* Latent width of a multitask model (validation error for plain MLPs). */
hml_status hml_model_latent_dim(const hml_model* model, size_t* out);
void hml_model_free(hml_model* model);

/* ---- experiment commands ---------------------------------------------- */

/* Run one experiment command ("preprocess", "run-baselines", "run-multitask",
 * "sweep-latent", "stats", "report") with a JSON configuration document.
 * Writes the output bundle to the configured directory and returns the
 * summary document through out_summary_json. */
hml_status hml_run_command(const char* command, const char* config_json,
                           char** out_summary_json);

#ifdef __cplusplus
}
#endif

#endif /* HEARTML_H */
