use std::ffi::{CStr, CString};
use std::ptr;

use listopt_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(listopt_last_error_message()) }
        .to_str()
        .unwrap()
        .to_string()
}

fn problem(list: &str, requests: &str) -> *mut ListoptProblem {
    let mut p = ptr::null_mut();
    let st = unsafe { listopt_problem_new(c(list).as_ptr(), c(requests).as_ptr(), &mut p) };
    assert_eq!(st, ListoptStatus::Ok, "{}", last_error());
    p
}

#[test]
fn solve_and_inspect_schedule() {
    let p = problem("a,b,c", "c,c,c");
    unsafe {
        let (mut l, mut m) = (0, 0);
        assert_eq!(listopt_problem_size(p, &mut l, &mut m), ListoptStatus::Ok);
        assert_eq!((l, m), (3, 3));

        let mut s = ptr::null_mut();
        assert_eq!(listopt_solve(p, &mut s), ListoptStatus::Ok);
        assert_eq!(listopt_schedule_total(s), 5);
        assert_eq!(listopt_schedule_len(s), 3);
        let mut t = 0;
        assert_eq!(listopt_schedule_target(s, 2, &mut t), ListoptStatus::Ok);
        assert_eq!(t, 1);
        assert_eq!(listopt_schedule_target(s, 3, &mut t), ListoptStatus::Domain);
        assert!(last_error().contains('3'));

        let mut order = [9usize; 3];
        assert_eq!(
            listopt_schedule_initial(s, order.as_mut_ptr(), 3),
            ListoptStatus::Ok
        );
        let want = listopt::solver::solve(
            &listopt::model::Permutation::identity(3),
            &listopt::model::RequestSequence::new(vec![2, 2, 2], 3).unwrap(),
        )
        .unwrap();
        assert_eq!(&order[..], want.initial.order());
        assert_eq!(
            listopt_schedule_initial(s, order.as_mut_ptr(), 2),
            ListoptStatus::Domain
        );

        let mut json = ptr::null_mut();
        assert_eq!(listopt_schedule_to_json(s, &mut json), ListoptStatus::Ok);
        let v: serde_json::Value =
            serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
        assert_eq!(v["total"], 5);
        assert_eq!(v["requests"].as_array().unwrap().len(), 3);
        listopt_string_free(json);

        listopt_schedule_free(s);
        listopt_problem_free(p);
    }
}

#[test]
fn oracles_and_online_policies() {
    let p = problem("a,b,c", "c,c");
    unsafe {
        let mut total = 0;
        for kind in ["all", "paid-free", "subset"] {
            assert_eq!(
                listopt_oracle(p, c(kind).as_ptr(), &mut total),
                ListoptStatus::Ok
            );
            assert_eq!(total, 4);
        }
        assert_eq!(
            listopt_online(p, c("mtf").as_ptr(), &mut total),
            ListoptStatus::Ok
        );
        assert_eq!(total, 4);
        assert_eq!(
            listopt_online(p, c("transpose").as_ptr(), &mut total),
            ListoptStatus::Ok
        );
        assert_eq!(total, 5);
        assert_eq!(
            listopt_oracle(p, c("nope").as_ptr(), &mut total),
            ListoptStatus::Usage
        );
        assert_eq!(
            listopt_online(p, c("lru").as_ptr(), &mut total),
            ListoptStatus::Usage
        );
        assert!(!last_error().is_empty());
        listopt_problem_free(p);
    }
}

#[test]
fn error_statuses() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(
            listopt_problem_new(c("a,b").as_ptr(), c("q").as_ptr(), &mut p),
            ListoptStatus::Domain
        );
        assert!(p.is_null());
        assert!(last_error().contains('q'));
        assert_eq!(
            listopt_problem_new(ptr::null(), c("a").as_ptr(), &mut p),
            ListoptStatus::NullPointer
        );
        let bad = [0xffu8, 0];
        assert_eq!(
            listopt_problem_new(bad.as_ptr().cast(), c("").as_ptr(), &mut p),
            ListoptStatus::InvalidUtf8
        );
        assert_eq!(
            listopt_solve(ptr::null(), &mut ptr::null_mut()),
            ListoptStatus::NullPointer
        );
        assert_eq!(listopt_schedule_total(ptr::null()), 0);
        listopt_problem_free(ptr::null_mut());
        listopt_schedule_free(ptr::null_mut());
        listopt_string_free(ptr::null_mut());
    }
}

#[test]
fn size_guards_are_configurable() {
    let p = problem("a,b,c,d,e,f", "f,a");
    unsafe {
        let mut total = 0;
        assert_eq!(
            listopt_oracle(p, c("all").as_ptr(), &mut total),
            ListoptStatus::Config
        );
        assert_eq!(listopt_problem_set_max_l(p, 0, 6), ListoptStatus::Ok);
        assert_eq!(
            listopt_oracle(p, c("all").as_ptr(), &mut total),
            ListoptStatus::Ok
        );
        assert_eq!(last_error(), "");
        assert_eq!(listopt_problem_set_max_l(p, 5, 0), ListoptStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(listopt_solve(p, &mut s), ListoptStatus::Config);
        assert!(s.is_null());
        listopt_problem_free(p);
    }
}

#[test]
fn header_declares_every_export() {
    let header =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/listopt.h")).unwrap();
    let src = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/src/lib.rs")).unwrap();
    let exports: Vec<&str> = src
        .split("extern \"C\" fn ")
        .skip(1)
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 14);
    for name in exports {
        assert!(
            header.contains(&format!("{name}(")),
            "{name} missing from header"
        );
    }
    assert!(header.contains("typedef struct ListoptProblem ListoptProblem;"));
    assert!(header.contains("LISTOPT_STATUS_OK = 0"));
}
