package com.shop.orders;

import com.shop.billing.InvoiceService;

/** Accepts customer orders and tracks the order lifecycle. */
public class OrderService {
    private OrderRepository orders;
    private OrderValidator validator;
    private InvoiceService invoices;

    /** Places a new order for the customer after validation. */
    public String placeOrder(String customer, int quantity) {
        validator.validateOrder(customer, quantity);
        String id = orders.saveOrder(customer, quantity);
        invoices.issueInvoice(id, quantity);
        return id;
    }

    /** Cancels an open order. */
    public void cancelOrder(String id) {
        orders.findOrder(id);
        orders.deleteOrder(id);
    }
}
