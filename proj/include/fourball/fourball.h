#ifndef FOURBALL_H
#define FOURBALL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define FB_API __declspec(dllexport)
#else
#define FB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    FB_OK = 0,
    FB_INVALID_ARGUMENT = 1,
    FB_IO_ERROR = 2,
    FB_INTERNAL_ERROR = 3
} fb_status;

typedef enum { FB_FORMAT_JSON = 0, FB_FORMAT_CSV = 1 } fb_format;

/* output text owned by the library */
typedef struct fb_buffer fb_buffer;
FB_API const char* fb_buffer_data(const fb_buffer* b);
FB_API size_t fb_buffer_size(const fb_buffer* b);
FB_API void fb_buffer_destroy(fb_buffer* b);

/* message for the last failing call on this thread */
FB_API const char* fb_last_error(void);

FB_API fb_status fb_parse_real(const char* text, double* out);
FB_API fb_status fb_apply_collision(const double q[3], char type, double r, double out[3]);

FB_API fb_status fb_simulate(const double p0[3], const double q0[3], double r, uint64_t max_collisions,
                             fb_format fmt, fb_buffer** out);
FB_API fb_status fb_simulate_absolute(const double x0[4], const double v0[4], double r, uint64_t max_collisions,
                                      fb_format fmt, fb_buffer** out);
FB_API fb_status fb_reduce(char contact, double theta0, double phi0, double r, uint64_t steps, uint64_t keep_last_b,
                           fb_format fmt, fb_buffer** out);
/* branch: "upper", "middle" or "lower" */
FB_API fb_status fb_pattern(const char* word, double r, const char* branch, fb_format fmt, fb_buffer** out);
/* branch NULL: all three branches per r */
FB_API fb_status fb_selfsimilar(const char* word, double r_min, double r_max, double r_step, const char* branch,
                                fb_format fmt, fb_buffer** out);
FB_API fb_status fb_thresholds(fb_format fmt, fb_buffer** out);

typedef struct fb_sweep_config fb_sweep_config;
FB_API fb_sweep_config* fb_sweep_config_create(void);
FB_API void fb_sweep_config_destroy(fb_sweep_config* cfg);
FB_API fb_status fb_sweep_config_set_r(fb_sweep_config* cfg, double r_min, double r_max, double r_step);
FB_API fb_status fb_sweep_config_set_grid(fb_sweep_config* cfg, uint64_t grid_theta, uint64_t grid_phi);
FB_API fb_status fb_sweep_config_set_random(fb_sweep_config* cfg, uint64_t count, uint64_t seed);
FB_API fb_status fb_sweep_config_set_contact(fb_sweep_config* cfg, char contact);
FB_API fb_status fb_sweep_config_set_limits(fb_sweep_config* cfg, uint64_t max_collisions, uint64_t keep_last_b);
/* singularities_path may be NULL; a path of "-" means standard output */
FB_API fb_status fb_sweep_run(const fb_sweep_config* cfg, unsigned threads, fb_format fmt, const char* records_path,
                              const char* singularities_path);

#ifdef __cplusplus
}
#endif

#endif
