// ----------------------------------------------------------------------------
// Copyright 2026 The GraphForge Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ----------------------------------------------------------------------------

#pragma once

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(GRAPHFORGE_BUILDING_LIBRARY)
#define GF_API __declspec(dllexport)
#else
#define GF_API __declspec(dllimport)
#endif
#else
#define GF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct gf_function gf_function;
typedef struct gf_tensor gf_tensor;
typedef struct gf_executable gf_executable;

typedef enum gf_status
{
    GF_OK = 0,
    GF_ERR_ARITY_MISMATCH,
    GF_ERR_SHAPE_MISMATCH,
    GF_ERR_ELEMENT_TYPE_MISMATCH,
    GF_ERR_INVALID_ATTRIBUTE,
    GF_ERR_UNKNOWN_INPUT,
    GF_ERR_CYCLE_DETECTED,
    GF_ERR_VALIDATION_FAILURE,
    GF_ERR_NON_DIFFERENTIABLE_OP,
    GF_ERR_UNSUPPORTED_STRIDE,
    GF_ERR_MULTIPLE_RESULTS,
    GF_ERR_INVALID_ARGUMENT,
    GF_ERR_UNKNOWN_PASS,
    GF_ERR_UNSUPPORTED_OP,
    GF_ERR_RANK_MISMATCH,
    GF_ERR_SIGNATURE_MISMATCH,
    GF_ERR_SYNTAX_ERROR,
    GF_ERR_UNKNOWN_OP,
    GF_ERR_FOLD_FAILURE,
    GF_ERR_EXECUTION_FAILURE,
    GF_ERR_INTERNAL,
} gf_status;

typedef enum gf_element_type
{
    GF_F32 = 0,
    GF_F64,
    GF_I64,
    GF_BOOL,
} gf_element_type;

typedef enum gf_conv_layout
{
    GF_CONV_LAYOUT_IDENTITY = 0,
    GF_CONV_LAYOUT_CHANNELS_LAST,
} gf_conv_layout;

typedef struct gf_compile_options
{
    int optimize;
    gf_conv_layout conv_layout;
} gf_compile_options;

/* Errors. The message of the last failing call on this thread. */
GF_API const char* gf_last_error(void);
GF_API const char* gf_status_name(gf_status status);

/* Strings returned through char** are owned by the caller. */
GF_API void gf_string_free(char* text);

/* Functions */
GF_API gf_status gf_function_parse(const char* text, gf_function** out);
GF_API gf_status gf_function_print(const gf_function* fn, char** out);
GF_API gf_status gf_function_dot(const gf_function* fn, char** out);
GF_API size_t gf_function_node_count(const gf_function* fn);
GF_API size_t gf_function_parameter_count(const gf_function* fn);
GF_API size_t gf_function_result_count(const gf_function* fn);
GF_API void gf_function_free(gf_function* fn);

/* wrt holds parameter positions. The gradient function takes the original
   parameters plus a trailing seed parameter. */
GF_API gf_status gf_function_differentiate(const gf_function* fn,
                                           const size_t* wrt,
                                           size_t wrt_count,
                                           gf_function** out);

/* passes: comma-separated names from simplify, cse, fold, layouts. */
GF_API gf_status gf_function_optimize(const gf_function* fn,
                                      const char* passes,
                                      gf_conv_layout conv_layout,
                                      gf_function** out);

/* supported: comma-separated op names. */
GF_API gf_status gf_function_partition(const gf_function* fn, const char* supported, char** out);

/* Tensors */
GF_API gf_status gf_tensor_parse(const char* text, gf_tensor** out);
GF_API gf_status gf_tensor_print(const gf_tensor* tensor, char** out);
GF_API gf_status gf_tensor_create(gf_element_type element_type,
                                  const size_t* shape,
                                  size_t rank,
                                  const void* row_major_data,
                                  size_t byte_count,
                                  gf_tensor** out);
GF_API gf_element_type gf_tensor_element_type(const gf_tensor* tensor);
GF_API size_t gf_tensor_rank(const gf_tensor* tensor);
GF_API size_t gf_tensor_dim(const gf_tensor* tensor, size_t axis);
GF_API size_t gf_tensor_element_count(const gf_tensor* tensor);
GF_API gf_status gf_tensor_read(const gf_tensor* tensor, void* row_major_data, size_t byte_count);
GF_API void gf_tensor_free(gf_tensor* tensor);

/* Compilation and execution */
GF_API gf_status gf_compile(const gf_function* fn,
                            const gf_compile_options* options,
                            gf_executable** out);
GF_API size_t gf_executable_parameter_count(const gf_executable* exe);
GF_API size_t gf_executable_result_count(const gf_executable* exe);
GF_API gf_status gf_executable_call(const gf_executable* exe,
                                    const gf_tensor* const* inputs,
                                    size_t input_count,
                                    gf_tensor** outputs,
                                    size_t output_count);
GF_API gf_status gf_executable_listing(const gf_executable* exe, char** out);
/* Liveness and offset table followed by "arena <N> bytes". */
GF_API gf_status gf_executable_plan(const gf_executable* exe, char** out);
GF_API void gf_executable_free(gf_executable* exe);

#ifdef __cplusplus
}
#endif
