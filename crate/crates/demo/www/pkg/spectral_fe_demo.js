/* @ts-self-types="./spectral_fe_demo.d.ts" */

/**
 * Reconstructed density of states next to the exact levels.
 */
export class DosView {
    static __wrap(ptr) {
        const obj = Object.create(DosView.prototype);
        obj.__wbg_ptr = ptr;
        DosViewFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        DosViewFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_dosview_free(ptr, 0);
    }
    /**
     * @returns {Float64Array}
     */
    get dos() {
        const ret = wasm.dosview_dos(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {Float64Array}
     */
    get energies() {
        const ret = wasm.dosview_energies(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {Float64Array}
     */
    get level_degeneracies() {
        const ret = wasm.dosview_level_degeneracies(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {Float64Array}
     */
    get level_energies() {
        const ret = wasm.dosview_level_energies(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {number}
     */
    get order() {
        const ret = wasm.dosview_order(this.__wbg_ptr);
        return ret >>> 0;
    }
    /**
     * @returns {number}
     */
    get r() {
        const ret = wasm.dosview_r(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get resolution() {
        const ret = wasm.dosview_resolution(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get samples() {
        const ret = wasm.dosview_samples(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get xi() {
        const ret = wasm.dosview_xi(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get z_exact() {
        const ret = wasm.dosview_z_exact(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get z_tilde() {
        const ret = wasm.dosview_z_tilde(this.__wbg_ptr);
        return ret;
    }
}
if (Symbol.dispose) DosView.prototype[Symbol.dispose] = DosView.prototype.free;

/**
 * Predicted failure probability as a function of the readout noise level.
 */
export class NoiseView {
    static __wrap(ptr) {
        const obj = Object.create(NoiseView.prototype);
        obj.__wbg_ptr = ptr;
        NoiseViewFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        NoiseViewFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_noiseview_free(ptr, 0);
    }
    /**
     * @returns {number}
     */
    get closed_form() {
        const ret = wasm.noiseview_closed_form(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {Float64Array}
     */
    get failure() {
        const ret = wasm.noiseview_failure(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {number}
     */
    get required() {
        const ret = wasm.noiseview_required(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {Float64Array}
     */
    get sigmas() {
        const ret = wasm.noiseview_sigmas(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
}
if (Symbol.dispose) NoiseView.prototype[Symbol.dispose] = NoiseView.prototype.free;

/**
 * Time window and energy kernel of order Θ with resolution Δe.
 */
export class WindowView {
    static __wrap(ptr) {
        const obj = Object.create(WindowView.prototype);
        obj.__wbg_ptr = ptr;
        WindowViewFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        WindowViewFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_windowview_free(ptr, 0);
    }
    /**
     * @returns {number}
     */
    get alpha() {
        const ret = wasm.windowview_alpha(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get alpha_bound() {
        const ret = wasm.windowview_alpha_bound(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {Float64Array}
     */
    get energies() {
        const ret = wasm.windowview_energies(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {Float64Array}
     */
    get kernel() {
        const ret = wasm.windowview_kernel(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {number}
     */
    get side_area() {
        const ret = wasm.windowview_side_area(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get side_bound() {
        const ret = wasm.windowview_side_bound(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {Float64Array}
     */
    get times() {
        const ret = wasm.windowview_times(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {Float64Array}
     */
    get window() {
        const ret = wasm.windowview_window(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
}
if (Symbol.dispose) WindowView.prototype[Symbol.dispose] = WindowView.prototype.free;

/**
 * @param {number} n
 * @param {number} jz
 * @param {number} h
 * @param {number} beta
 * @param {number} gamma
 * @param {number} sigma
 * @param {bigint} seed
 * @param {number} points
 * @returns {DosView}
 */
export function isingDos(n, jz, h, beta, gamma, sigma, seed, points) {
    const ret = wasm.isingDos(n, jz, h, beta, gamma, sigma, seed, points);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return DosView.__wrap(ret[0]);
}

/**
 * @param {number} n
 * @param {number} jz
 * @param {number} h
 * @param {number} beta
 * @param {number} gamma
 * @param {number} epsilon
 * @param {number} points
 * @returns {NoiseView}
 */
export function noiseSensitivity(n, jz, h, beta, gamma, epsilon, points) {
    const ret = wasm.noiseSensitivity(n, jz, h, beta, gamma, epsilon, points);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return NoiseView.__wrap(ret[0]);
}

/**
 * @param {number} order
 * @param {number} resolution
 * @param {number} points
 * @returns {WindowView}
 */
export function windowView(order, resolution, points) {
    const ret = wasm.windowView(order, resolution, points);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return WindowView.__wrap(ret[0]);
}
function __wbg_get_imports() {
    const import0 = {
        __proto__: null,
        __wbg_Error_92b29b0548f8b746: function(arg0, arg1) {
            const ret = Error(getStringFromWasm0(arg0, arg1));
            return ret;
        },
        __wbg___wbindgen_throw_344f42d3211c4765: function(arg0, arg1) {
            throw new Error(getStringFromWasm0(arg0, arg1));
        },
        __wbindgen_init_externref_table: function() {
            const table = wasm.__wbindgen_externrefs;
            const offset = table.grow(4);
            table.set(0, undefined);
            table.set(offset + 0, undefined);
            table.set(offset + 1, null);
            table.set(offset + 2, true);
            table.set(offset + 3, false);
        },
    };
    return {
        __proto__: null,
        "./spectral_fe_demo_bg.js": import0,
    };
}

const DosViewFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_dosview_free(ptr, 1));
const NoiseViewFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_noiseview_free(ptr, 1));
const WindowViewFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_windowview_free(ptr, 1));

function getArrayF64FromWasm0(ptr, len) {
    ptr = ptr >>> 0;
    return getFloat64ArrayMemory0().subarray(ptr / 8, ptr / 8 + len);
}

let cachedFloat64ArrayMemory0 = null;
function getFloat64ArrayMemory0() {
    if (cachedFloat64ArrayMemory0 === null || cachedFloat64ArrayMemory0.byteLength === 0) {
        cachedFloat64ArrayMemory0 = new Float64Array(wasm.memory.buffer);
    }
    return cachedFloat64ArrayMemory0;
}

function getStringFromWasm0(ptr, len) {
    return decodeText(ptr >>> 0, len);
}

let cachedUint8ArrayMemory0 = null;
function getUint8ArrayMemory0() {
    if (cachedUint8ArrayMemory0 === null || cachedUint8ArrayMemory0.byteLength === 0) {
        cachedUint8ArrayMemory0 = new Uint8Array(wasm.memory.buffer);
    }
    return cachedUint8ArrayMemory0;
}

function takeFromExternrefTable0(idx) {
    const value = wasm.__wbindgen_externrefs.get(idx);
    wasm.__externref_table_dealloc(idx);
    return value;
}

let cachedTextDecoder = new TextDecoder('utf-8', { ignoreBOM: true, fatal: true });
cachedTextDecoder.decode();
const MAX_SAFARI_DECODE_BYTES = 2146435072;
let numBytesDecoded = 0;
function decodeText(ptr, len) {
    numBytesDecoded += len;
    if (numBytesDecoded >= MAX_SAFARI_DECODE_BYTES) {
        cachedTextDecoder = new TextDecoder('utf-8', { ignoreBOM: true, fatal: true });
        cachedTextDecoder.decode();
        numBytesDecoded = len;
    }
    return cachedTextDecoder.decode(getUint8ArrayMemory0().subarray(ptr, ptr + len));
}

let wasmModule, wasmInstance, wasm;
function __wbg_finalize_init(instance, module) {
    wasmInstance = instance;
    wasm = instance.exports;
    wasmModule = module;
    cachedFloat64ArrayMemory0 = null;
    cachedUint8ArrayMemory0 = null;
    wasm.__wbindgen_start();
    return wasm;
}

async function __wbg_load(module, imports) {
    if (typeof Response === 'function' && module instanceof Response) {
        if (typeof WebAssembly.instantiateStreaming === 'function') {
            try {
                return await WebAssembly.instantiateStreaming(module, imports);
            } catch (e) {
                const validResponse = module.ok && expectedResponseType(module.type);

                if (validResponse && module.headers.get('Content-Type') !== 'application/wasm') {
                    console.warn("`WebAssembly.instantiateStreaming` failed because your server does not serve Wasm with `application/wasm` MIME type. Falling back to `WebAssembly.instantiate` which is slower. Original error:\n", e);

                } else { throw e; }
            }
        }

        const bytes = await module.arrayBuffer();
        return await WebAssembly.instantiate(bytes, imports);
    } else {
        const instance = await WebAssembly.instantiate(module, imports);

        if (instance instanceof WebAssembly.Instance) {
            return { instance, module };
        } else {
            return instance;
        }
    }

    function expectedResponseType(type) {
        switch (type) {
            case 'basic': case 'cors': case 'default': return true;
        }
        return false;
    }
}

function initSync(module) {
    if (wasm !== undefined) return wasm;


    if (module !== undefined) {
        if (Object.getPrototypeOf(module) === Object.prototype) {
            ({module} = module)
        } else {
            console.warn('using deprecated parameters for `initSync()`; pass a single object instead')
        }
    }

    const imports = __wbg_get_imports();
    if (!(module instanceof WebAssembly.Module)) {
        module = new WebAssembly.Module(module);
    }
    const instance = new WebAssembly.Instance(module, imports);
    return __wbg_finalize_init(instance, module);
}

async function __wbg_init(module_or_path) {
    if (wasm !== undefined) return wasm;


    if (module_or_path !== undefined) {
        if (Object.getPrototypeOf(module_or_path) === Object.prototype) {
            ({module_or_path} = module_or_path)
        } else {
            console.warn('using deprecated parameters for the initialization function; pass a single object instead')
        }
    }

    if (module_or_path === undefined) {
        module_or_path = new URL('spectral_fe_demo_bg.wasm', import.meta.url);
    }
    const imports = __wbg_get_imports();

    if (typeof module_or_path === 'string' || (typeof Request === 'function' && module_or_path instanceof Request) || (typeof URL === 'function' && module_or_path instanceof URL)) {
        module_or_path = fetch(module_or_path);
    }

    const { instance, module } = await __wbg_load(await module_or_path, imports);

    return __wbg_finalize_init(instance, module);
}

export { initSync, __wbg_init as default };
