/* sqlh: succinct-state local-Hamiltonian toolkit, C interface.
 *
 * All functions return 0 on success and a positive error code on failure;
 * sqlh_last_error() holds a thread-local message for the most recent failure.
 * Strings returned through char** are heap-allocated; release them with
 * sqlh_string_free. Handles are opaque and freed with their _free function.
 */
#ifndef SQLH_H
#define SQLH_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

const char* sqlh_version(void);

/* thread-local diagnostics for the last failed call */
const char* sqlh_last_error(void);
int sqlh_last_error_code(void);

void sqlh_string_free(char* s);

/* ---- exact number codecs ------------------------------------------------ */
/* family: "N" | "Q+" | "Q" | "C"; flags: comma list of sqrt, omega, half[:q].
 * Values use the textual grammar, e.g. "-6/3+2/-7i", "w^3*1", "rt(1/3)*1". */
int sqlh_num_encode(const char* family, unsigned p, const char* flags, const char* value,
                    char** out_bits_grouped);
int sqlh_num_decode(const char* family, unsigned p, const char* flags, const char* bits,
                    char** out_value);
int sqlh_num_ratio(const char* family, unsigned p, const char* flags, const char* x,
                   const char* y, char** out_value, char** out_class, char** out_bits);

/* ---- circuit descriptors ------------------------------------------------- */
typedef struct sqlh_circuit sqlh_circuit;

int sqlh_circuit_parse(const char* text, sqlh_circuit** out);
int sqlh_circuit_load(const char* path, sqlh_circuit** out);
void sqlh_circuit_free(sqlh_circuit* c);
int sqlh_circuit_text(const sqlh_circuit* c, char** out_text);
int sqlh_circuit_save(const sqlh_circuit* c, const char* path);
int sqlh_circuit_info(const sqlh_circuit* c, int* qubits, int* gates);
int sqlh_circuit_decompose(const sqlh_circuit* c, sqlh_circuit** out);
int sqlh_circuit_sparsify(const sqlh_circuit* c, sqlh_circuit** out);
int sqlh_circuit_preidle(const sqlh_circuit* c, sqlh_circuit** out);

/* ---- succinct states ------------------------------------------------------ */
typedef struct sqlh_state sqlh_state;

int sqlh_state_load(const char* spec_path, sqlh_state** out);
int sqlh_state_parse(const char* spec_json, const char* base_dir, sqlh_state** out);
void sqlh_state_free(sqlh_state* s);
int sqlh_state_qubits(const sqlh_state* s, int* n);
/* value text plus its encoded bit string in the state's codomain class */
int sqlh_state_query(const sqlh_state* s, const char* x_bits, char** out_value,
                     char** out_encoded_bits);

/* ---- Hamiltonians ---------------------------------------------------------- */
typedef struct sqlh_ham sqlh_ham;

int sqlh_ham_load(const char* path, sqlh_ham** out);
void sqlh_ham_free(sqlh_ham* h);
int sqlh_ham_info(const sqlh_ham* h, int* qubits, int* locality, int* is_real);
/* variant: "4local" | "3local" | "sparse6"; input = x||xi bits */
int sqlh_ham_build(const sqlh_circuit* c, const char* variant, const char* input_bits,
                   sqlh_ham** out);
/* op: "real" | "fixednode" | "gauge"; state required for fixednode/gauge */
int sqlh_ham_transform(const sqlh_ham* h, const char* op, const sqlh_state* state,
                       sqlh_ham** out);
int sqlh_ham_entry(const sqlh_ham* h, const char* x_bits, const char* y_bits,
                   char** out_value);
int sqlh_ham_save(const sqlh_ham* h, const char* path);

/* ---- Arthur's verification ------------------------------------------------ */
/* tmax: rational text or "" for the M^3 preset. Report is a JSON document with
 * per-trial outcomes. *out_accept is 1 for accept, 0 for reject. */
int sqlh_verify(const sqlh_ham* h, const sqlh_state* xi, const char* lambda,
                const char* xstar_bits, const char* a, const char* b, int trials,
                const char* tmax, uint64_t seed, int* out_accept, char** out_report_json);

/* ---- oracle checks, fixtures, pipelines ----------------------------------- */
/* what: "state" | "ham" | "spectrum" | "stoq" */
int sqlh_oracle_check(const char* what, const char* ham_path, const char* state_path,
                      char** out_report_json);
/* kind: yes | yes-complex | no-fastpath | no-lambda | no-xi | spectrum | stationarity */
int sqlh_fixture_make(const char* kind, const char* dir, int n, uint64_t seed,
                      char** out_files_json);
/* Returns 0 and stores the pipeline status (0 ok, 1 failed expectation,
 * 2 failed step) in *out_status. */
int sqlh_pipeline_run(const char* manifest_path, int* out_status, char** out_report_json);

#ifdef __cplusplus
}
#endif

#endif /* SQLH_H */
