use std::ffi::{CStr, CString};
use std::ptr;

use pivotlab_ffi::*;

fn last_error() -> String {
    let p = pl_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn morris(n: usize) -> *mut PlOrientation {
    let mut o = ptr::null_mut();
    assert_eq!(unsafe { pl_orientation_morris(n, &mut o) }, PlStatus::Ok);
    o
}

fn run(o: *const PlOrientation, rule: &str, pi: Option<&str>, seed: u64, start: u64) -> (PlStatus, *mut PlTrace) {
    let rule = CString::new(rule).unwrap();
    let pi = pi.map(|p| CString::new(p).unwrap());
    let mut t = ptr::null_mut();
    let s = unsafe {
        pl_run(o, rule.as_ptr(), pi.as_ref().map_or(ptr::null(), |p| p.as_ptr()), seed, start, 0, &mut t)
    };
    (s, t)
}

#[test]
fn morris_run_through_handles() {
    let o = morris(3);
    let (s, t) = run(o, "murty", None, 0, 0);
    assert_eq!(s, PlStatus::Ok);
    assert!(pl_last_error().is_null());
    unsafe {
        assert_eq!(pl_trace_steps(t), 5);
        assert_eq!(pl_trace_len(t), 6);
        let mut rs = PlRunStatus::StepLimit;
        assert_eq!(pl_trace_status(t, &mut rs), PlStatus::Ok);
        assert_eq!(rs, PlRunStatus::SinkReached);
        let mut v = 0;
        assert_eq!(pl_trace_vertex(t, 5, &mut v), PlStatus::Ok);
        assert_eq!(v, 0b111);
        assert_eq!(pl_trace_vertex(t, 6, &mut v), PlStatus::InvalidArgument);

        let mut csv = ptr::null_mut();
        assert_eq!(pl_trace_to_csv(t, &mut csv), PlStatus::Ok);
        let text = CStr::from_ptr(csv).to_str().unwrap().to_owned();
        pl_string_free(csv);
        assert!(text.starts_with("step,vertex,outmap,chosen,level,L,status\n"));
        assert_eq!(text.lines().count(), 7);
        pl_trace_free(t);
        pl_orientation_free(o);
    }
}

#[test]
fn greedy_cycle_and_step_limit() {
    let o = morris(3);
    let (s, t) = run(o, "greedy-antipodal", None, 0, 0b011);
    assert_eq!(s, PlStatus::Ok);
    let mut rs = PlRunStatus::SinkReached;
    unsafe {
        pl_trace_status(t, &mut rs);
        pl_trace_free(t);
    }
    assert_eq!(rs, PlRunStatus::CycleDetected);

    let o5 = morris(5);
    let rule = CString::new("murty").unwrap();
    let mut t = ptr::null_mut();
    unsafe {
        assert_eq!(pl_run(o5, rule.as_ptr(), ptr::null(), 0, 0, 3, &mut t), PlStatus::Ok);
        pl_trace_status(t, &mut rs);
        assert_eq!(pl_trace_steps(t), 3);
        pl_trace_free(t);
        pl_orientation_free(o5);
        pl_orientation_free(o);
    }
    assert_eq!(rs, PlRunStatus::StepLimit);
}

#[test]
fn instance_json_round_trip_and_outmaps() {
    let mut inst = ptr::null_mut();
    let mut json = ptr::null_mut();
    unsafe {
        assert_eq!(pl_instance_morris(5, &mut inst), PlStatus::Ok);
        assert_eq!(pl_instance_to_json(inst, &mut json), PlStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(pl_instance_from_json(json, &mut back), PlStatus::Ok);
        pl_string_free(json);
        assert_eq!(pl_instance_dim(back), 5);

        let mut lcp = ptr::null_mut();
        assert_eq!(pl_orientation_from_instance(back, &mut lcp), PlStatus::Ok);
        pl_instance_free(back);
        pl_instance_free(inst);
        let fast = morris(5);
        for v in 0..32u64 {
            let (mut a, mut b) = (0, 0);
            assert_eq!(pl_orientation_outmap(lcp, v, &mut a), PlStatus::Ok);
            assert_eq!(pl_orientation_outmap(fast, v, &mut b), PlStatus::Ok);
            assert_eq!(a, b, "vertex {v:05b}");
        }
        let mut out = 0;
        assert_eq!(pl_orientation_outmap(fast, 32, &mut out), PlStatus::Dimension);
        pl_orientation_free(lcp);
        pl_orientation_free(fast);
    }
}

#[test]
fn tables_and_verification() {
    let mut u = ptr::null_mut();
    unsafe {
        assert_eq!(pl_orientation_uniform(3, &mut u), PlStatus::Ok);
        let mut text = ptr::null_mut();
        assert_eq!(pl_orientation_to_table(u, &mut text), PlStatus::Ok);
        let mut t = ptr::null_mut();
        assert_eq!(pl_orientation_from_table(text, &mut t), PlStatus::Ok);
        pl_string_free(text);
        assert_eq!(pl_orientation_dim(t), 3);

        let checks = CString::new("uso,2u,local-uu").unwrap();
        let mut passed = -1;
        assert_eq!(pl_verify(t, checks.as_ptr(), &mut passed), PlStatus::Ok);
        assert_eq!(passed, 1);
        let bad = CString::new("uso,nope").unwrap();
        assert_eq!(pl_verify(t, bad.as_ptr(), &mut passed), PlStatus::InvalidArgument);

        let broken = CString::new("1\n0 +\n1 +\n").unwrap();
        let mut x = ptr::null_mut();
        assert_eq!(pl_orientation_from_table(broken.as_ptr(), &mut x), PlStatus::MalformedOrientation);
        assert!(x.is_null());
        pl_orientation_free(t);
        pl_orientation_free(u);
    }
}

#[test]
fn errors_are_reported() {
    let mut inst = ptr::null_mut();
    unsafe {
        assert_eq!(pl_instance_morris(4, &mut inst), PlStatus::Dimension);
        assert!(last_error().contains('4'));
        let junk = CString::new("{\"n\": 2,\n \"M\": [").unwrap();
        assert_eq!(pl_instance_from_json(junk.as_ptr(), &mut inst), PlStatus::Parse);
        assert_eq!(pl_instance_from_json(ptr::null(), &mut inst), PlStatus::NullArgument);
        assert_eq!(pl_instance_morris(3, ptr::null_mut()), PlStatus::NullArgument);
    }
    let o = morris(3);
    assert_eq!(run(o, "murty", Some("1,2,3"), 0, 0).0, PlStatus::InvalidArgument);
    assert_eq!(run(o, "murty-pi", Some("1,2"), 0, 0).0, PlStatus::Dimension);
    assert_eq!(run(o, "sideways", None, 0, 0).0, PlStatus::InvalidArgument);
    assert!(last_error().contains("sideways"));
    assert_eq!(run(ptr::null(), "murty", None, 0, 0).0, PlStatus::NullArgument);
    unsafe {
        assert_eq!(pl_trace_steps(ptr::null()), 0);
        pl_trace_free(ptr::null_mut());
        pl_orientation_free(o);
    }
}

#[test]
fn random_edge_replays_with_its_seed() {
    let o = morris(7);
    let steps = |seed| {
        let (s, t) = run(o, "random-edge", None, seed, 0);
        assert_eq!(s, PlStatus::Ok);
        let mut csv = ptr::null_mut();
        unsafe {
            pl_trace_to_csv(t, &mut csv);
            let text = CStr::from_ptr(csv).to_str().unwrap().to_owned();
            pl_string_free(csv);
            pl_trace_free(t);
            text
        }
    };
    assert_eq!(steps(11), steps(11));
    unsafe { pl_orientation_free(o) };
}

#[test]
fn version_is_set() {
    let v = unsafe { CStr::from_ptr(pl_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
