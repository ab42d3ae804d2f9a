//! Exercises the C ABI exactly as a foreign binding would: raw pointers,
//! status codes, JSON in and out.

use std::ffi::{CStr, CString};
use std::ptr;

use sepcolor_ffi::*;

unsafe fn last_error() -> String {
    let ptr = sep_last_error_message();
    assert!(!ptr.is_null(), "expected an error message");
    unsafe { CStr::from_ptr(ptr) }.to_str().unwrap().to_string()
}

unsafe fn take_string(ptr: *mut std::ffi::c_char) -> String {
    let text = unsafe { CStr::from_ptr(ptr) }.to_str().unwrap().to_string();
    unsafe { sep_string_free(ptr) };
    text
}

#[test]
fn generate_color_verify_roundtrip() {
    unsafe {
        let mut instance: *mut SepInstance = ptr::null_mut();
        assert_eq!(
            sep_instance_generate_even_cycle(12, 4, 3, &mut instance),
            SepStatus::Ok
        );
        assert_eq!(sep_instance_vertex_count(instance), 24);
        assert_eq!(sep_instance_edge_count(instance), 24);
        assert_eq!(sep_instance_max_degree(instance), 2);
        let mut s = 0usize;
        assert_eq!(sep_instance_witness_size(instance, &mut s), SepStatus::Ok);
        assert_eq!(s, 1);

        let radius = 3usize;
        let mut coloring: *mut SepColoring = ptr::null_mut();
        assert_eq!(
            sep_color(instance, SepColorMode::Pipeline, 0, &radius, &mut coloring),
            SepStatus::Ok
        );
        assert_eq!(sep_coloring_palette_size(coloring), 3);
        assert!(sep_coloring_colors_used(coloring) <= 3);
        assert_eq!(sep_coloring_edge_count(coloring), 24);

        let mut colors = vec![0usize; 24];
        assert_eq!(
            sep_coloring_colors(coloring, colors.as_mut_ptr(), colors.len()),
            SepStatus::Ok
        );
        assert!(colors.iter().all(|&c| c < 3));

        let mut pass = false;
        assert_eq!(
            sep_verify(instance, coloring, true, &mut pass),
            SepStatus::Ok
        );
        assert!(pass);

        let mut dot: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(sep_export_dot(instance, coloring, &mut dot), SepStatus::Ok);
        let dot = take_string(dot);
        assert!(dot.starts_with("graph coloring {"));

        sep_coloring_free(coloring);
        sep_instance_free(instance);
    }
}

#[test]
fn json_round_trip_through_the_boundary() {
    unsafe {
        let mut instance: *mut SepInstance = ptr::null_mut();
        assert_eq!(
            sep_instance_generate_random_bipartite(8, 9, 3, 42, &mut instance),
            SepStatus::Ok
        );
        let mut json: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(sep_instance_to_json(instance, &mut json), SepStatus::Ok);
        let text = take_string(json);

        let c_text = CString::new(text.clone()).unwrap();
        let mut reparsed: *mut SepInstance = ptr::null_mut();
        assert_eq!(
            sep_instance_from_json(c_text.as_ptr(), &mut reparsed),
            SepStatus::Ok
        );
        let mut json2: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(sep_instance_to_json(reparsed, &mut json2), SepStatus::Ok);
        assert_eq!(take_string(json2), text);

        // Color through the reparsed handle and round-trip the coloring too.
        let mut coloring: *mut SepColoring = ptr::null_mut();
        assert_eq!(
            sep_color(
                reparsed,
                SepColorMode::Pipeline,
                0,
                ptr::null(),
                &mut coloring
            ),
            SepStatus::Ok
        );
        let mut cjson: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(sep_coloring_to_json(coloring, &mut cjson), SepStatus::Ok);
        let ctext = take_string(cjson);
        let c_ctext = CString::new(ctext.clone()).unwrap();
        let mut recolored: *mut SepColoring = ptr::null_mut();
        assert_eq!(
            sep_coloring_from_json(c_ctext.as_ptr(), &mut recolored),
            SepStatus::Ok
        );
        let mut pass = false;
        assert_eq!(
            sep_verify(reparsed, recolored, true, &mut pass),
            SepStatus::Ok
        );
        assert!(pass);

        sep_coloring_free(coloring);
        sep_coloring_free(recolored);
        sep_instance_free(instance);
        sep_instance_free(reparsed);
    }
}

#[test]
fn error_paths_set_status_and_message() {
    unsafe {
        // Null out-parameter.
        assert_eq!(
            sep_instance_generate_even_cycle(12, 4, 3, ptr::null_mut()),
            SepStatus::InvalidArgument
        );

        // Bad generator parameters.
        let mut instance: *mut SepInstance = ptr::null_mut();
        assert_eq!(
            sep_instance_generate_even_cycle(12, 3, 3, &mut instance),
            SepStatus::InvalidArgument
        );
        assert!(last_error().contains("separation radius"));

        // Unparseable JSON.
        let garbage = CString::new("not json").unwrap();
        assert_eq!(
            sep_instance_from_json(garbage.as_ptr(), &mut instance),
            SepStatus::Parse
        );
        assert!(!last_error().is_empty());

        // Triangle: König mode must report non-bipartiteness.
        let triangle =
            CString::new("{\"format_version\":1,\"vertex_count\":3,\"edges\":[[0,1],[0,2],[1,2]]}")
                .unwrap();
        assert_eq!(
            sep_instance_from_json(triangle.as_ptr(), &mut instance),
            SepStatus::Ok
        );
        let mut coloring: *mut SepColoring = ptr::null_mut();
        assert_eq!(
            sep_color(instance, SepColorMode::Konig, 0, ptr::null(), &mut coloring),
            SepStatus::NotBipartite
        );
        assert!(last_error().contains("odd cycle"));

        // Pipeline without a witness block.
        assert_eq!(
            sep_color(
                instance,
                SepColorMode::Pipeline,
                0,
                ptr::null(),
                &mut coloring
            ),
            SepStatus::MissingWitness
        );

        // Greedy still works on the triangle.
        assert_eq!(
            sep_color(
                instance,
                SepColorMode::Greedy,
                7,
                ptr::null(),
                &mut coloring
            ),
            SepStatus::Ok
        );
        assert!(sep_coloring_palette_size(coloring) <= 3);

        // Undersized buffer.
        let mut tiny = [0usize; 1];
        assert_eq!(
            sep_coloring_colors(coloring, tiny.as_mut_ptr(), tiny.len()),
            SepStatus::InvalidArgument
        );

        sep_coloring_free(coloring);
        sep_instance_free(instance);

        // Frees tolerate null.
        sep_instance_free(ptr::null_mut());
        sep_coloring_free(ptr::null_mut());
        sep_string_free(ptr::null_mut());
    }
}

#[test]
fn radius_override_contract_crosses_the_boundary() {
    unsafe {
        let mut instance: *mut SepInstance = ptr::null_mut();
        assert_eq!(
            sep_instance_generate_even_cycle(12, 4, 3, &mut instance),
            SepStatus::Ok
        );
        // Paper-faithful mode rejects the r = 3 witness...
        let mut coloring: *mut SepColoring = ptr::null_mut();
        assert_eq!(
            sep_color(
                instance,
                SepColorMode::Pipeline,
                0,
                ptr::null(),
                &mut coloring
            ),
            SepStatus::InvalidArgument
        );
        assert!(last_error().contains("radius"));
        // ...and the override accepts it.
        let radius = 3usize;
        assert_eq!(
            sep_color(instance, SepColorMode::Pipeline, 0, &radius, &mut coloring),
            SepStatus::Ok
        );
        sep_coloring_free(coloring);
        sep_instance_free(instance);
    }
}
