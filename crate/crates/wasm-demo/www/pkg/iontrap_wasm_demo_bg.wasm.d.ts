/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_circuitrun_free: (a: number, b: number) => void;
export const circuitrun_counts: (a: number) => [number, number];
export const circuitrun_patterns: (a: number) => [number, number];
export const circuitrun_probabilities: (a: number) => [number, number];
export const circuitrun_schedule: (a: number) => [number, number];
export const doppler_trajectory: (a: bigint, b: number, c: number) => [number, number, number, number];
export const rabi_curve: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
export const run_circuit: (a: number, b: number, c: number, d: bigint) => [number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_start: () => void;
