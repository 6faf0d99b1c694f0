#ifndef UNIREAL_H
#define UNIREAL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum UnirealStatus {
  UNIREAL_STATUS_OK = 0,
  UNIREAL_STATUS_NULL_ARGUMENT = 1,
  UNIREAL_STATUS_INVALID_UTF8 = 2,
  UNIREAL_STATUS_IO = 3,
  UNIREAL_STATUS_SYNTAX = 4,
  UNIREAL_STATUS_PROOF_REJECTED = 5,
  UNIREAL_STATUS_UNKNOWN_INTERPRETATION = 6,
  UNIREAL_STATUS_EXTRACTION_FAILED = 7,
  UNIREAL_STATUS_BAD_CONFIG = 8,
  UNIREAL_STATUS_PANIC = 9,
} UnirealStatus;

/**
 * A parsed proof file.
 */
typedef struct UnirealProof UnirealProof;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses proof text. `theorem` names the proof in reports.
 *
 * # Safety
 * `theorem` and `source` must be NUL-terminated strings; `out` must be
 * writable.
 */
enum UnirealStatus unireal_proof_parse(const char *theorem,
                                       const char *source,
                                       struct UnirealProof **out);

/**
 * Reads and parses a `.proof` file; the theorem name is the file stem.
 *
 * # Safety
 * `path` must be a NUL-terminated string; `out` must be writable.
 */
enum UnirealStatus unireal_proof_load(const char *path, struct UnirealProof **out);

/**
 * # Safety
 * `p` must be null or a handle returned by this library, freed once.
 */
void unireal_proof_free(struct UnirealProof *p);

/**
 * Checks the proof against its claim and writes the proved sequent.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum UnirealStatus unireal_proof_check(const struct UnirealProof *p, char **out);

/**
 * Extracts a realizer under the named interpretation and writes it in the
 * realizer file format.
 *
 * # Safety
 * `p` must be a live handle, `interp_name` a NUL-terminated string and
 * `out` writable.
 */
enum UnirealStatus unireal_extract(const struct UnirealProof *p,
                                   const char *interp_name,
                                   char **out);

/**
 * Verifies the extracted realizer and writes the report as JSON. A null
 * `config_toml` selects the default configuration. The verdict itself
 * (holds, fails, ...) is part of the report, not the status code.
 *
 * # Safety
 * `p` must be a live handle, `interp_name` a NUL-terminated string,
 * `config_toml` null or NUL-terminated and `out` writable.
 */
enum UnirealStatus unireal_verify(const struct UnirealProof *p,
                                  const char *interp_name,
                                  const char *config_toml,
                                  char **out);

/**
 * The message of the last failure on this thread, or null. The pointer
 * stays valid until the next library call on the same thread.
 */
const char *unireal_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, freed once.
 */
void unireal_string_free(char *s);

const char *unireal_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* UNIREAL_H */
