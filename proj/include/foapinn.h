/* foapinn: physics-informed neural fields for first-order Ambisonic room
 * impulse responses, plus the image-source simulator that generates the
 * ground-truth datasets.
 *
 * C API over the C++ core. All objects are opaque handles owned by the
 * library; every function that can fail returns a foapinn_status, and
 * foapinn_last_error() describes the most recent failure on the calling
 * thread.
 */
#ifndef FOAPINN_H
#define FOAPINN_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define FOAPINN_API __declspec(dllexport)
#else
#define FOAPINN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

#define FOAPINN_ABI_VERSION 1u

typedef enum foapinn_status {
  FOAPINN_OK = 0,
  FOAPINN_ERR_VALIDATION = 1, /* bad arguments, config, or file contents */
  FOAPINN_ERR_IO = 2,         /* missing/corrupt files, short reads/writes */
  FOAPINN_ERR_DIVERGENCE = 3, /* training produced a non-finite loss */
  FOAPINN_ERR_STATE = 4,      /* API misuse (missing intermediates, null handle) */
  FOAPINN_ERR_INTERNAL = 5,
} foapinn_status;

typedef struct foapinn_dataset foapinn_dataset;
typedef struct foapinn_model foapinn_model;

typedef struct foapinn_dataset_info {
  uint64_t positions;           /* grid size D */
  uint64_t samples_per_channel; /* L */
  double sample_rate;
  double duration;
  uint64_t train_count, validation_count, evaluation_count;
  double amplitude_scale; /* original units = stored * amplitude_scale */
  double grid_spacing;
  double region_min[3], region_max[3];
  double room_dims[3];
  double source[3];
} foapinn_dataset_info;

typedef struct foapinn_metrics {
  double nmse_w_db;
  double nmse_xyz_db; /* mean of per-channel dB over X, Y, Z */
  double pcc_w;
  double pcc_xyz;
  uint64_t skipped_zero_variance;
} foapinn_metrics;

FOAPINN_API uint32_t foapinn_abi_version(void);
FOAPINN_API const char* foapinn_status_name(foapinn_status status);

/* Message for the last failure on this thread; valid until the next failing
 * call on the same thread. Never NULL. */
FOAPINN_API const char* foapinn_last_error(void);

/* --- datasets ------------------------------------------------------------ */

/* Simulates FOA RIRs on the region grid of the scene described by
 * scene_json (see README for the schema) and returns the dataset. */
FOAPINN_API foapinn_status foapinn_simulate(const char* scene_json,
                                            foapinn_dataset** out_dataset);

FOAPINN_API foapinn_status foapinn_dataset_read(const char* dir,
                                                foapinn_dataset** out_dataset);
FOAPINN_API foapinn_status foapinn_dataset_write(const foapinn_dataset* dataset,
                                                 const char* dir);
FOAPINN_API foapinn_status foapinn_dataset_info_get(const foapinn_dataset* dataset,
                                                    foapinn_dataset_info* out_info);
FOAPINN_API void foapinn_dataset_free(foapinn_dataset* dataset);

/* --- training ------------------------------------------------------------ */

/* Trains a field on the dataset per train_json (see README), streaming one
 * history row per iteration to history_csv_path (pass NULL to skip), and
 * returns the checkpoint with the best validation NMSE on the W channel. */
FOAPINN_API foapinn_status foapinn_train(const foapinn_dataset* dataset,
                                         const char* train_json,
                                         const char* history_csv_path,
                                         foapinn_model** out_model);

FOAPINN_API foapinn_status foapinn_model_read(const char* path, foapinn_model** out_model);
FOAPINN_API foapinn_status foapinn_model_write(const foapinn_model* model,
                                               const char* path);
FOAPINN_API void foapinn_model_free(foapinn_model* model);

/* --- inference and evaluation -------------------------------------------- */

/* xyzt: n points as (x, y, z, t) quadruples; out_wxyz receives n (W, X, Y, Z)
 * quadruples in original amplitude units. */
FOAPINN_API foapinn_status foapinn_model_predict(const foapinn_model* model,
                                                 const double* xyzt, size_t n,
                                                 double* out_wxyz);

/* split: "validation" or "evaluation". */
FOAPINN_API foapinn_status foapinn_evaluate(const foapinn_model* model,
                                            const foapinn_dataset* dataset,
                                            const char* split,
                                            foapinn_metrics* out_metrics);

/* Writes <out_dir>/<tag>_truth.ppm, <tag>_pred.ppm, and <tag>.csv for the
 * W-channel slice nearest to height_m / time_s. */
FOAPINN_API foapinn_status foapinn_plot_slice(const foapinn_model* model,
                                              const foapinn_dataset* dataset,
                                              double height_m, double time_s,
                                              const char* out_dir, const char* tag);

#ifdef __cplusplus
}
#endif

#endif /* FOAPINN_H */
