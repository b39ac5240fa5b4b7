#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "liouville/liouville.h"

static int failures = 0;

#define CHECK(cond)                                               \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: CHECK(%s) failed\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

static const double kPi = 3.14159265358979323846;

static double node(size_t j, size_t n) { return 2.0 * kPi * (double)j / (double)n - kPi; }

static void test_grids(void) {
  enum { N = 128 };
  double re[N], out[N];
  for (size_t j = 0; j < N; ++j) re[j] = cos(3.0 * node(j, N));
  lv_grid* g = NULL;
  CHECK(lv_grid_create(re, NULL, N, &g) == LV_OK);
  CHECK(lv_grid_size(g) == N);

  lv_grid* h = NULL;
  CHECK(lv_half_laplacian(g, &h) == LV_OK);
  CHECK(lv_grid_values(h, out, NULL) == LV_OK);
  double err = 0.0;
  for (size_t j = 0; j < N; ++j) err = fmax(err, fabs(out[j] - 3.0 * cos(3.0 * node(j, N))));
  CHECK(err < 1e-12);
  lv_grid_free(h);

  CHECK(lv_hilbert(g, &h) == LV_OK);
  lv_grid_values(h, out, NULL);
  err = 0.0;
  for (size_t j = 0; j < N; ++j) err = fmax(err, fabs(out[j] - sin(3.0 * node(j, N))));
  CHECK(err < 1e-12);
  lv_grid_free(h);

  CHECK(lv_poisson_extend(g, 0.5, &h) == LV_OK);
  lv_grid_values(h, out, NULL);
  CHECK(fabs(out[0] - 0.125 * cos(3.0 * node(0, N))) < 1e-12);
  lv_grid_free(h);

  CHECK(lv_green_convolve(g, &h) == LV_OK);
  lv_grid_values(h, out, NULL);
  CHECK(fabs(out[5] - cos(3.0 * node(5, N)) / 3.0) < 1e-12);
  lv_grid_free(h);

  h = NULL;
  lv_status s = lv_poisson_extend(g, 1.5, &h);
  CHECK(s == LV_INVALID_RADIUS);
  CHECK(h == NULL);
  CHECK(lv_exit_code(s) == 1);
  CHECK(strstr(lv_last_error(), "InvalidRadius") != NULL);
  lv_grid_free(g);

  double three[3] = {1, 2, 3};
  CHECK(lv_grid_create(three, NULL, 3, &g) == LV_INVALID_INPUT);
  CHECK(lv_half_laplacian(NULL, &h) == LV_INVALID_INPUT);
}

static void test_curves(void) {
  double sq[16] = {0, 0, 0.5, 0, 1, 0, 1, 0.5, 1, 1, 0.5, 1, 0, 1, 0, 0.5};
  size_t corners[4] = {0, 2, 4, 6};
  lv_curve* c = NULL;
  CHECK(lv_curve_create(sq, 8, NULL, 0, &c) == LV_INVALID_INPUT);
  CHECK(lv_curve_create(sq, 4, corners, 2, &c) == LV_INVALID_INPUT);
  CHECK(lv_curve_create(sq, 8, corners, 4, &c) == LV_OK);
  int index = 0;
  double turning = 0.0;
  CHECK(lv_rotation_index(c, &index, &turning) == LV_OK);
  CHECK(index == 1);
  CHECK(fabs(turning - 2.0 * kPi) < 1e-12);
  size_t crossings = 7;
  CHECK(lv_self_intersections(c, &crossings) == LV_OK && crossings == 0);
  char* word = NULL;
  CHECK(lv_blank_word(c, 0, &word) == LV_OK);
  CHECK(word && strcmp(word, "a0+") == 0);
  lv_free_string(word);
  size_t circles = 0;
  int sum = 0;
  CHECK(lv_seifert(c, &circles, &sum) == LV_OK && circles == 1 && sum == 1);
  lv_curve_free(c);

  /* two diagonals crossing at the origin */
  const char* eight =
      "{\"vertices\": [[1,1],[1.5,0.5],[2,0],[1.5,-0.5],[1,-1],[0.75,-0.75],[0.5,-0.5],[0.25,-0.25],"
      "[-0.125,0.125],[-0.5,0.5],[-0.75,0.75],[-1,1],[-1.5,0.5],[-2,0],[-1.5,-0.5],[-1,-1],[-0.75,-0.75],"
      "[-0.5,-0.5],[-0.25,-0.25],[0.125,0.125],[0.5,0.5],[0.75,0.75]], \"corners\": [0,2,4,11,13,15]}";
  CHECK(lv_curve_parse(eight, &c) == LV_OK);
  CHECK(lv_rotation_index(c, &index, NULL) == LV_OK && index == 0);
  CHECK(lv_self_intersections(c, &crossings) == LV_OK && crossings == 1);
  CHECK(lv_blank_word(c, 3, &word) == LV_OK);
  CHECK(word && strlen(word) == 7 && strchr(word, '-') && strchr(word, '+'));
  lv_free_string(word);
  lv_curve_free(c);
  CHECK(lv_curve_parse("{\"vertices\": 3}", &c) == LV_INVALID_INPUT);
  CHECK(lv_curve_parse("[", &c) == LV_INVALID_INPUT);

  int contracts = -1;
  CHECK(lv_word_contract("a0- b1+ a1+ b0+", &contracts) == LV_OK && contracts == 1);
  CHECK(lv_word_contract("a0+ b0-", &contracts) == LV_OK && contracts == 0);
  CHECK(lv_word_contract("a0* b", &contracts) == LV_INVALID_INPUT);
}

static void test_run(void) {
  lv_result* r = NULL;
  CHECK(lv_run("contract", "{\"word\": \"a0- b1+ a1+ b0+\"}", &r) == LV_OK);
  CHECK(strstr(lv_result_json(r), "\"fully_contracted\": true") != NULL);
  CHECK(strstr(lv_result_json(r), "\"version\": \"0.1.0\"") != NULL);
  CHECK(strstr(lv_result_trace(r), "verdict: contracts") != NULL);
  CHECK(strcmp(lv_result_table(r), "") == 0);
  lv_result_free(r);

  CHECK(lv_run("scan", "{\"mu_ladder\": \"2^0..2^3\", \"radii\": \"0.4,0.2,0.1\"}", &r) == LV_OK);
  CHECK(strncmp(lv_result_table(r), "r,k,alpha\n", 10) == 0);
  lv_result_free(r);

  r = NULL;
  lv_status s = lv_run("fixtures", "{\"name\": \"nope\"}", &r);
  CHECK(s == LV_UNKNOWN_FIXTURE && r == NULL);
  CHECK(lv_exit_code(s) == 1);
  CHECK(strstr(lv_last_error(), "limacon") != NULL);
  CHECK(lv_run("nope", "{}", &r) == LV_INVALID_INPUT);
  CHECK(lv_run("scan", "{\"radii\": [0.4, 0.2", &r) == LV_INVALID_INPUT);
  CHECK(lv_run("contract", "{\"word\": 7}", &r) == LV_INVALID_INPUT);
}

static void test_status(void) {
  CHECK(strcmp(lv_status_name(LV_OK), "Ok") == 0);
  CHECK(strcmp(lv_status_name(LV_THEOREM_VIOLATION), "TheoremViolation") == 0);
  CHECK(strcmp(lv_status_name(LV_UNKNOWN_FIXTURE), "UnknownFixture") == 0);
  CHECK(lv_exit_code(LV_OK) == 0);
  CHECK(lv_exit_code(LV_INVALID_INPUT) == 1);
  CHECK(lv_exit_code(LV_UNDER_RESOLVED) == 2);
  CHECK(lv_exit_code(LV_INCONCLUSIVE_MESH) == 2);
  CHECK(lv_exit_code(LV_THEOREM_VIOLATION) == 3);
  CHECK(strcmp(lv_version(), "0.1.0") == 0);
  CHECK(strstr(lv_command_names(), "rotation-index") != NULL);
  CHECK(strstr(lv_fixture_names(), "fblank-1") != NULL);
}

int main(void) {
  test_grids();
  test_curves();
  test_run();
  test_status();
  if (failures) {
    fprintf(stderr, "%d check(s) failed\n", failures);
    return 1;
  }
  printf("capi: all checks passed\n");
  return 0;
}
