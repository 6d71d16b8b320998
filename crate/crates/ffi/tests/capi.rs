use std::ffi::{CStr, CString};
use std::ptr;

use sortnet_ffi::*;

fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { sortnet_string_free(p) };
    s
}

fn last_error() -> String {
    let p = sortnet_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

#[test]
fn validate_network_examples() {
    let good = [1u32, 3, 2, 1, 3, 2];
    let bad = [1u32, 2, 1, 1, 2, 1];
    unsafe {
        assert!(sortnet_validate_network(good.as_ptr(), good.len(), 4));
        assert!(!sortnet_validate_network(bad.as_ptr(), bad.len(), 4));
        assert!(!sortnet_validate_network(ptr::null(), 3, 3));
    }
}

#[test]
fn sample_round_trips_through_the_bijection() {
    unsafe {
        let mut net = ptr::null_mut();
        assert_eq!(sortnet_network_sample(9, 3, 0, &mut net), SortnetStatus::Ok);
        assert_eq!(sortnet_network_size(net), 9);
        let len = sortnet_network_len(net);
        assert_eq!(len, 36);
        let swaps = std::slice::from_raw_parts(sortnet_network_swaps(net), len).to_vec();
        assert!(sortnet_validate_network(swaps.as_ptr(), len, 9));

        let mut t = ptr::null_mut();
        assert_eq!(sortnet_eg_inverse(net, &mut t), SortnetStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(sortnet_eg_forward(t, &mut back), SortnetStatus::Ok);
        let back_swaps = std::slice::from_raw_parts(sortnet_network_swaps(back), len);
        assert_eq!(back_swaps, swaps.as_slice());

        sortnet_network_free(back);
        sortnet_tableau_free(t);
        sortnet_network_free(net);
    }
}

#[test]
fn json_in_and_out() {
    let json = CString::new(r#"{"shape":[2,1],"entries":[[1,2],[3]]}"#).unwrap();
    unsafe {
        let mut t = ptr::null_mut();
        assert_eq!(sortnet_tableau_from_json(json.as_ptr(), &mut t), SortnetStatus::Ok);
        let mut net = ptr::null_mut();
        assert_eq!(sortnet_eg_forward(t, &mut net), SortnetStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(sortnet_network_to_json(net, &mut s), SortnetStatus::Ok);
        assert_eq!(take_string(s), r#"{"n":3,"swaps":[1,2,1]}"#);
        let mut s = ptr::null_mut();
        assert_eq!(sortnet_tableau_to_json(t, &mut s), SortnetStatus::Ok);
        assert_eq!(take_string(s), r#"{"shape":[2,1],"entries":[[1,2],[3]]}"#);
        let mut s = ptr::null_mut();
        assert_eq!(sortnet_network_render_svg(net, &mut s), SortnetStatus::Ok);
        assert_eq!(take_string(s).matches("<polyline").count(), 3);
        sortnet_network_free(net);
        sortnet_tableau_free(t);
    }
}

#[test]
fn errors_set_status_and_message() {
    unsafe {
        let mut net = ptr::null_mut();
        let swaps = [1u32, 1];
        assert_eq!(
            sortnet_network_new(3, swaps.as_ptr(), 2, &mut net),
            SortnetStatus::InvalidNetwork
        );
        assert!(net.is_null());
        assert!(last_error().contains("size 3"));

        let bad = CString::new("{nope").unwrap();
        assert_eq!(sortnet_network_from_json(bad.as_ptr(), &mut net), SortnetStatus::Parse);
        assert_eq!(sortnet_network_from_json(ptr::null(), &mut net), SortnetStatus::NullPointer);

        let mut s = ptr::null_mut();
        let rows = [1usize, 3];
        assert_eq!(sortnet_dimension(rows.as_ptr(), 2, &mut s), SortnetStatus::InvalidShape);

        let mut t = ptr::null_mut();
        let json = CString::new(r#"{"shape":[3],"entries":[[1,2,3]]}"#).unwrap();
        assert_eq!(sortnet_tableau_from_json(json.as_ptr(), &mut t), SortnetStatus::Ok);
        assert_eq!(sortnet_eg_forward(t, &mut net), SortnetStatus::InvalidShape);
        sortnet_tableau_free(t);
    }
}

#[test]
fn dimension_as_decimal() {
    unsafe {
        let mut s = ptr::null_mut();
        let rows = [4usize, 3, 2, 1];
        assert_eq!(sortnet_dimension(rows.as_ptr(), rows.len(), &mut s), SortnetStatus::Ok);
        assert_eq!(take_string(s), "768");
        let rows: Vec<usize> = (1..30).rev().collect();
        assert_eq!(sortnet_dimension(rows.as_ptr(), rows.len(), &mut s), SortnetStatus::Ok);
        assert!(take_string(s).len() > 300);
    }
}

#[test]
fn realize_and_certify() {
    unsafe {
        let xs = [0.0, 1.0, 2.0];
        let ys = [0.0, 1.0, 0.0];
        let mut net = ptr::null_mut();
        assert_eq!(sortnet_realize(xs.as_ptr(), ys.as_ptr(), 3, 1e-9, &mut net), SortnetStatus::Ok);
        let swaps = std::slice::from_raw_parts(sortnet_network_swaps(net), 3);
        assert_eq!(swaps, &[1, 2, 1]);
        let mut found = true;
        let mut w = SortnetWindow::default();
        assert_eq!(sortnet_certify(net, &mut found, &mut w), SortnetStatus::Ok);
        assert!(!found);
        sortnet_network_free(net);

        let ys = [0.0, 1.0, 2.0];
        assert_eq!(
            sortnet_realize(xs.as_ptr(), ys.as_ptr(), 3, 1e-9, &mut net),
            SortnetStatus::GeneralPosition
        );

        let gp = [1u32, 2, 4, 3, 1, 2, 4, 3, 1, 2];
        assert_eq!(sortnet_network_new(5, gp.as_ptr(), gp.len(), &mut net), SortnetStatus::Ok);
        assert_eq!(sortnet_certify(net, &mut found, &mut w), SortnetStatus::Ok);
        assert!(found);
        assert_eq!(
            w,
            SortnetWindow {
                time_start: 1,
                time_end: 10,
                pos_start: 1,
                pos_end: 4
            }
        );
        sortnet_network_free(net);
    }
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/sortnet.h")).unwrap();
    for name in [
        "sortnet_last_error",
        "sortnet_string_free",
        "sortnet_network_sample",
        "sortnet_eg_forward",
        "sortnet_eg_inverse",
        "sortnet_dimension",
        "sortnet_realize",
        "sortnet_certify",
        "typedef struct SortnetNetwork SortnetNetwork",
        "SORTNET_STATUS_INVALID_NETWORK = 5",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}
