#ifndef BALLISTIC_BALLISTIC_H
#define BALLISTIC_BALLISTIC_H

#include <stddef.h>
#include <stdint.h>

#if defined(BALLISTIC_BUILDING_SHARED)
#define BL_API __attribute__((visibility("default")))
#else
#define BL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as CLI exit codes. */
typedef enum {
  BL_OK = 0,
  BL_ERR_INTERNAL = 1,
  BL_ERR_INPUT = 2,
  BL_ERR_CHECK = 3,
  BL_ERR_LIMIT = 4,
  BL_ERR_ZERO_PROBABILITY = 5,
  BL_ERR_SIMULTANEOUS_COLLISION = 6
} bl_status;

typedef struct bl_state bl_state;     /* amplitudes over arrangements of n labels */
typedef struct bl_circuit bl_circuit; /* gate list on n positions */

BL_API const char* bl_version(void);
/* Message of the last failure on this thread, "" if none. */
BL_API const char* bl_last_error(void);

/* image is one-line notation: image[p-1] is the label at position p. */
BL_API bl_status bl_state_new(const int* image, int n, bl_state** out);
BL_API void bl_state_free(bl_state* state);
BL_API size_t bl_state_dimension(const bl_state* state);
BL_API bl_status bl_state_amplitude(const bl_state* state, const int* image, double* re, double* im);
/* out receives n! probabilities ordered by lexicographic rank. */
BL_API bl_status bl_state_probabilities(const bl_state* state, double* out, size_t len);

BL_API bl_status bl_circuit_new(int n, bl_circuit** out);
BL_API bl_status bl_circuit_from_json(const char* json, bl_circuit** out);
BL_API void bl_circuit_free(bl_circuit* circuit);
/* type is 'X', 'Y' (angle) or 'H' (rapidity); k is the left position of the pair. */
BL_API bl_status bl_circuit_add(bl_circuit* circuit, char type, int k, double param);
BL_API size_t bl_circuit_size(const bl_circuit* circuit);
BL_API bl_status bl_apply(bl_state* state, const bl_circuit* circuit);

BL_API bl_status bl_rank(const int* image, int n, uint64_t* out);
BL_API bl_status bl_unrank(int n, uint64_t rank, int* image);

/* Runs a subcommand. input_json may be NULL for commands without a document.
   options_json is an object ("format": "table" selects the text rendering).
   *out is set whenever a report was produced, including BL_ERR_CHECK;
   release it with bl_string_free. */
BL_API bl_status bl_run_command(const char* command, const char* input_json, const char* options_json,
                                char** out);
BL_API void bl_string_free(char* s);

/* Runs one acceptance criterion (1..12) or all of them (0); *passed counts passes. */
BL_API bl_status bl_selftest(int only, uint64_t seed, int* passed, int* total);

#ifdef __cplusplus
}
#endif

#endif
