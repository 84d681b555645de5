/* tslint:disable */
/* eslint-disable */

/**
 * Compiled schedule text plus sampled outcome counts.
 */
export class CircuitRun {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly counts: Uint32Array;
    /**
     * Comma-separated outcome patterns, `1` = bright, ion 0 first.
     */
    readonly patterns: string;
    /**
     * Exact Born-rule probabilities for the same patterns.
     */
    readonly probabilities: Float64Array;
    readonly schedule: string;
}

export function doppler_trajectory(seed: bigint, initial: number, max_events: number): Float64Array;

export function rabi_curve(kind: string, n: number, points: number, beta_max: number): Float64Array;

export function run_circuit(text: string, shots: number, seed: bigint): CircuitRun;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_circuitrun_free: (a: number, b: number) => void;
    readonly circuitrun_counts: (a: number) => [number, number];
    readonly circuitrun_patterns: (a: number) => [number, number];
    readonly circuitrun_probabilities: (a: number) => [number, number];
    readonly circuitrun_schedule: (a: number) => [number, number];
    readonly doppler_trajectory: (a: bigint, b: number, c: number) => [number, number, number, number];
    readonly rabi_curve: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly run_circuit: (a: number, b: number, c: number, d: bigint) => [number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
