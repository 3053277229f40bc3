package com.shop.billing;

/** Computes invoice tax for a payment amount. */
public class TaxCalculator {
    /** Tax for the invoice amount. */
    public double computeTax(double amount) {
        return amount * 0.2;
    }
}
