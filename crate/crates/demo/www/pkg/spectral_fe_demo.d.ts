/* tslint:disable */
/* eslint-disable */

/**
 * Reconstructed density of states next to the exact levels.
 */
export class DosView {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly dos: Float64Array;
    readonly energies: Float64Array;
    readonly level_degeneracies: Float64Array;
    readonly level_energies: Float64Array;
    readonly order: number;
    readonly r: number;
    readonly resolution: number;
    readonly samples: number;
    readonly xi: number;
    readonly z_exact: number;
    readonly z_tilde: number;
}

/**
 * Predicted failure probability as a function of the readout noise level.
 */
export class NoiseView {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly closed_form: number;
    readonly failure: Float64Array;
    readonly required: number;
    readonly sigmas: Float64Array;
}

/**
 * Time window and energy kernel of order Θ with resolution Δe.
 */
export class WindowView {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly alpha: number;
    readonly alpha_bound: number;
    readonly energies: Float64Array;
    readonly kernel: Float64Array;
    readonly side_area: number;
    readonly side_bound: number;
    readonly times: Float64Array;
    readonly window: Float64Array;
}

export function isingDos(n: number, jz: number, h: number, beta: number, gamma: number, sigma: number, seed: bigint, points: number): DosView;

export function noiseSensitivity(n: number, jz: number, h: number, beta: number, gamma: number, epsilon: number, points: number): NoiseView;

export function windowView(order: number, resolution: number, points: number): WindowView;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_dosview_free: (a: number, b: number) => void;
    readonly __wbg_noiseview_free: (a: number, b: number) => void;
    readonly __wbg_windowview_free: (a: number, b: number) => void;
    readonly dosview_dos: (a: number) => [number, number];
    readonly dosview_energies: (a: number) => [number, number];
    readonly dosview_level_degeneracies: (a: number) => [number, number];
    readonly dosview_level_energies: (a: number) => [number, number];
    readonly dosview_order: (a: number) => number;
    readonly dosview_r: (a: number) => number;
    readonly dosview_resolution: (a: number) => number;
    readonly dosview_samples: (a: number) => number;
    readonly dosview_xi: (a: number) => number;
    readonly dosview_z_exact: (a: number) => number;
    readonly dosview_z_tilde: (a: number) => number;
    readonly isingDos: (a: number, b: number, c: number, d: number, e: number, f: number, g: bigint, h: number) => [number, number, number];
    readonly noiseSensitivity: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
    readonly noiseview_failure: (a: number) => [number, number];
    readonly noiseview_sigmas: (a: number) => [number, number];
    readonly windowView: (a: number, b: number, c: number) => [number, number, number];
    readonly windowview_energies: (a: number) => [number, number];
    readonly windowview_kernel: (a: number) => [number, number];
    readonly windowview_times: (a: number) => [number, number];
    readonly windowview_window: (a: number) => [number, number];
    readonly noiseview_closed_form: (a: number) => number;
    readonly noiseview_required: (a: number) => number;
    readonly windowview_alpha: (a: number) => number;
    readonly windowview_alpha_bound: (a: number) => number;
    readonly windowview_side_area: (a: number) => number;
    readonly windowview_side_bound: (a: number) => number;
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __externref_table_dealloc: (a: number) => void;
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
