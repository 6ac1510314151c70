/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_dosview_free: (a: number, b: number) => void;
export const __wbg_noiseview_free: (a: number, b: number) => void;
export const __wbg_windowview_free: (a: number, b: number) => void;
export const dosview_dos: (a: number) => [number, number];
export const dosview_energies: (a: number) => [number, number];
export const dosview_level_degeneracies: (a: number) => [number, number];
export const dosview_level_energies: (a: number) => [number, number];
export const dosview_order: (a: number) => number;
export const dosview_r: (a: number) => number;
export const dosview_resolution: (a: number) => number;
export const dosview_samples: (a: number) => number;
export const dosview_xi: (a: number) => number;
export const dosview_z_exact: (a: number) => number;
export const dosview_z_tilde: (a: number) => number;
export const isingDos: (a: number, b: number, c: number, d: number, e: number, f: number, g: bigint, h: number) => [number, number, number];
export const noiseSensitivity: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
export const noiseview_failure: (a: number) => [number, number];
export const noiseview_sigmas: (a: number) => [number, number];
export const windowView: (a: number, b: number, c: number) => [number, number, number];
export const windowview_energies: (a: number) => [number, number];
export const windowview_kernel: (a: number) => [number, number];
export const windowview_times: (a: number) => [number, number];
export const windowview_window: (a: number) => [number, number];
export const noiseview_closed_form: (a: number) => number;
export const noiseview_required: (a: number) => number;
export const windowview_alpha: (a: number) => number;
export const windowview_alpha_bound: (a: number) => number;
export const windowview_side_area: (a: number) => number;
export const windowview_side_bound: (a: number) => number;
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_start: () => void;
